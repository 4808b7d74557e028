// relc: command-line front end for relational complexity computations.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "relc/acceptance.hpp"
#include "relc/cache.hpp"
#include "relc/catalog.hpp"
#include "relc/closure.hpp"
#include "relc/io.hpp"

namespace {

using relc::io::Json;

enum Exit { kOk = 0, kCriterionFailed = 1, kInputError = 2, kCapExceeded = 3 };

struct Global {
  std::string format = "json";
  std::uint64_t seed = 0xC4E2;
  unsigned jobs = 1;
  std::string cache;
  bool strict = false;
  bool force_caps = false;

  relc::Caps caps() const {
    relc::Caps c;
    c.force = force_caps;
    return c;
  }
};

// Thrown after output is written when --strict turns skipped fields into a failure.
struct StrictCapSkip {};

void render_table(std::ostream& os, const Json& j, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << indent << k << ":\n";
        render_table(os, v, indent + "  ");
      } else {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return !x.is_object(); });
    if (scalars) {
      os << indent << j.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << indent << "- [" << i << "]\n";
      render_table(os, j[i], indent + "  ");
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Global& g, const Json& j) {
  if (g.format == "table") render_table(std::cout, j, "");
  else std::cout << j.dump(2) << "\n";
}

std::string cache_dir(const Global& g) {
  if (!g.cache.empty()) return g.cache;
  if (const char* e = std::getenv("RELC_CACHE_DIR")) return e;
  return "";
}

relc::PermutationGroup load_group(const Global& g, const std::string& path) {
  auto grp = relc::io::load_group(path);
  auto dir = cache_dir(g);
  if (!dir.empty() && !relc::cache::load(grp, dir)) relc::cache::store(grp, dir);
  return grp;
}

std::vector<relc::Point> parse_points(const std::string& text, std::size_t degree) {
  std::vector<relc::Point> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long v = -1;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || v < 0) relc::fail(relc::ErrorCode::kParseError, "bad point '" + tok + "'");
    if (static_cast<std::size_t>(v) >= degree) relc::fail(relc::ErrorCode::kPointOutOfRange, tok);
    out.push_back(static_cast<relc::Point>(v));
  }
  return out;
}

Json cmd_stats(const Global& g, const std::string& file) {
  auto grp = load_group(g, file);
  auto r = relc::statistics(grp, g.caps());
  Json j = relc::io::statistics_to_json(r);
  if (g.strict && !r.skipped.empty()) {
    emit(g, j);
    throw StrictCapSkip{};
  }
  return j;
}

Json cmd_rc(const Global& g, const std::string& file) {
  auto grp = load_group(g, file);
  auto r = relc::relational_complexity(grp, g.caps());
  Json j{{"rc", r.rc}};
  j["witness"] = r.witness ? relc::io::witness_to_json(*r.witness, r.rc - 1) : Json(nullptr);
  j["height"] = r.height;
  j["height_witness"] = r.height_witness;
  return j;
}

struct TestsArgs {
  std::string file;
  std::string test = "all";
  std::optional<long> prime;
  std::size_t trials = 100000;
  std::optional<std::uint64_t> seed;
  std::string lambda;
  bool all = false;
};

Json cmd_tests(const Global& g, const TestsArgs& a) {
  auto grp = load_group(g, a.file);
  relc::BatteryOptions opt;
  opt.prime = a.prime;
  opt.trials = a.trials;
  opt.seed = a.seed.value_or(g.seed);
  opt.run_all = a.all;
  opt.caps = g.caps();
  std::vector<relc::TestOutcome> res;
  if (a.test == "beautiful") {
    if (a.lambda.empty()) relc::fail(relc::ErrorCode::kBadParameter, "--test=beautiful needs --lambda");
    res.push_back(relc::check_beautiful(grp, {}, parse_points(a.lambda, grp.degree())));
  } else {
    if (a.test != "all") opt.tests = {a.test};
    res = relc::run_battery(grp, opt);
  }
  Json out = Json::array();
  for (const auto& r : res) out.push_back(relc::io::outcome_to_json(r));
  return out;
}

Json cmd_closure(const Global& g, const std::string& file, std::size_t k) {
  auto grp = load_group(g, file);
  auto c = relc::k_closure(grp, k);
  Json j{{"k", k}, {"input_order", grp.order().str()}, {"closure_order", c.order().str()}};
  j["closed"] = c.order() == grp.order();
  j["closure"] = relc::io::group_to_json(c);
  return j;
}

Json cmd_homog(const std::string& file, std::optional<std::size_t> enumerate) {
  if (enumerate) {
    const std::size_t n = *enumerate;
    auto found = relc::digraphs::enumerate_homogeneous(n);
    std::map<std::vector<char>, std::string> names;
    for (const auto& d : relc::digraphs::lachlan_family(n))
      names.emplace(relc::digraphs::canonical_form(d.graph), d.name);
    Json list = Json::array();
    std::size_t matched = 0;
    for (const auto& d : found) {
      auto it = names.find(relc::digraphs::canonical_form(d));
      matched += it != names.end();
      Json e = relc::io::digraph_to_json(d);
      e["family"] = it != names.end() ? Json(it->second) : Json(nullptr);
      e["aut_order"] = relc::automorphism_group(d).order().str();
      list.push_back(std::move(e));
    }
    return Json{{"n", n},
                {"count", found.size()},
                {"predicted", names.size()},
                {"matches_prediction", matched == found.size() && found.size() == names.size()},
                {"digraphs", std::move(list)}};
  }
  if (file.empty()) relc::fail(relc::ErrorCode::kBadParameter, "give a structure file or --enumerate n");
  auto s = relc::io::structure_from_json(relc::io::read_file(file));
  auto r = relc::is_homogeneous(s);
  Json j{{"vertices", s.vertices}, {"homogeneous", r.homogeneous}, {"aut_order", r.aut_order.str()}};
  if (r.failure) j["failure"] = {{"from", r.failure->first}, {"to", r.failure->second}};
  return j;
}

Json cmd_catalog_list() {
  Json out = Json::array();
  for (const auto& c : relc::catalog::constructors())
    out.push_back({{"name", c.name}, {"params", c.params}, {"summary", c.summary}});
  return out;
}

Json cmd_catalog_build(const std::string& name, const std::vector<std::string>& kv) {
  std::map<std::string, std::string> params;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) relc::fail(relc::ErrorCode::kBadParameter, "parameter '" + s + "' is not key=value");
    params[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return relc::io::catalog_entry_to_json(relc::catalog::build(name, params));
}

int cmd_verify(const Global& g, const std::string& filter) {
  auto reports = relc::acceptance::run(filter, g.jobs);
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    failed += !r.pass;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"tags", r.tags},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"detail", r.detail}});
  }
  emit(g, Json{{"criteria", std::move(list)}, {"passed", reports.size() - failed}, {"failed", failed}});
  return failed ? kCriterionFailed : kOk;
}

int exit_for(relc::ErrorCode c) {
  using relc::ErrorCode;
  switch (c) {
    case ErrorCode::kDegreeTooLarge:
    case ErrorCode::kGroupTooLarge:
    case ErrorCode::kTooLarge:
    case ErrorCode::kCapExceeded:
      return kCapExceeded;
    default:
      return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relational complexity of finite permutation groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", g.seed, "random seed for sampled tests");
  app.add_option("--jobs", g.jobs, "worker threads for independent criteria")->check(CLI::Range(1u, 256u));
  app.add_option("--cache", g.cache, "stabilizer chain cache directory (default $RELC_CACHE_DIR)");
  app.add_flag("--strict", g.strict, "exit 3 when any field was skipped by a cap");
  app.add_flag("--force-caps", g.force_caps, "lift the default degree and order caps");

  std::string file;
  auto* stats = app.add_subcommand("stats", "order, RC, base size, height and irredundant base length");
  stats->add_option("group", file, "group file")->required();

  auto* rc = app.add_subcommand("rc", "relational complexity with a verified witness");
  rc->add_option("group", file, "group file")->required();

  TestsArgs targs;
  auto* tests = app.add_subcommand("tests", "witness tests for non-binary actions");
  tests->add_option("group", targs.file, "group file")->required();
  tests->add_option("--test", targs.test, "1..6, frobenius, beautiful or all")
      ->check(CLI::IsMember({"1", "2", "3", "4", "5", "6", "frobenius", "beautiful", "all"}));
  tests->add_option("--prime", targs.prime, "prime for test 5");
  tests->add_option("--trials", targs.trials, "trials for test 6");
  tests->add_option("--lambda", targs.lambda, "comma separated 0-based points for the beautiful subset check");
  tests->add_flag("--all", targs.all, "run every selected test instead of stopping at the first hit");

  std::size_t k = 2;
  auto* closure = app.add_subcommand("closure", "k-closure of a group");
  closure->add_option("group", file, "group file")->required();
  closure->add_option("-k", k, "arity, 2 or 3");

  std::optional<std::size_t> enumerate;
  auto* homog = app.add_subcommand("homog", "homogeneity of a structure, or enumeration of homogeneous digraphs");
  homog->add_option("structure", file, "structure file");
  homog->add_option("--enumerate", enumerate, "enumerate homogeneous digraphs on n vertices");

  auto* catalog = app.add_subcommand("catalog", "named group constructions");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "constructor names and parameters");
  std::string cname, out_path;
  std::vector<std::string> cparams;
  auto* build = catalog->add_subcommand("build", "write a group file");
  build->add_option("name", cname, "constructor name")->required();
  build->add_option("params", cparams, "key=value parameters");
  build->add_option("-o,--output", out_path, "output file (default stdout)");

  std::string filter;
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--filter", filter, "criterion ids or tags, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (verify->parsed()) return cmd_verify(g, filter);
    Json out;
    if (stats->parsed()) out = cmd_stats(g, file);
    else if (rc->parsed()) out = cmd_rc(g, file);
    else if (tests->parsed()) out = cmd_tests(g, targs);
    else if (closure->parsed()) out = cmd_closure(g, file, k);
    else if (homog->parsed()) out = cmd_homog(file, enumerate);
    else if (build->parsed()) {
      out = cmd_catalog_build(cname, cparams);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) relc::fail(relc::ErrorCode::kParseError, "cannot write " + out_path);
        f << out.dump(2) << "\n";
        return kOk;
      }
    } else {
      out = cmd_catalog_list();
    }
    emit(g, out);
    return kOk;
  } catch (const StrictCapSkip&) {
    return kCapExceeded;
  } catch (const relc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
}
