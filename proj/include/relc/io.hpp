#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relc/relcomp.hpp"
#include "relc/structures.hpp"
#include "relc/witness_tests.hpp"

// JSON forms of groups, structures, witnesses and reports. Point arrays are 0-based; cycle
// strings use 1-based points.
namespace relc::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& what) { fail(ErrorCode::kParseError, what); }

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline std::size_t read_size(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field ") + key);
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) parse_fail(std::string(key) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

inline Tuple read_points(const Json& j, std::size_t bound, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array");
  Tuple out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) parse_fail(std::string(what) + " entries must be non-negative integers");
    auto v = x.get<std::uint64_t>();
    if (v >= bound) fail(ErrorCode::kPointOutOfRange, std::string(what) + " entry " + std::to_string(v));
    out.push_back(static_cast<Point>(v));
  }
  return out;
}

inline PermutationGroup group_from_json(const Json& j) {
  const std::size_t n = read_size(j, "degree");
  if (n == 0) parse_fail("degree must be positive");
  if (n > kMaxDegree) fail(ErrorCode::kDegreeTooLarge, std::to_string(n));
  const bool cyc = j.contains("generators"), img = j.contains("generator_images");
  if (cyc == img) parse_fail("exactly one of generators and generator_images is required");
  std::vector<Permutation> gens;
  if (cyc) {
    const auto& a = j.at("generators");
    if (!a.is_array()) parse_fail("generators must be an array");
    for (const auto& s : a) {
      if (!s.is_string()) parse_fail("generators must be cycle strings");
      gens.push_back(parse_permutation(s.get<std::string>(), n));
    }
  } else {
    const auto& a = j.at("generator_images");
    if (!a.is_array()) parse_fail("generator_images must be an array");
    for (const auto& s : a) {
      Tuple t = read_points(s, n, "generator_images");
      if (t.size() != n) fail(ErrorCode::kDegreeMismatch, "image list of length " + std::to_string(t.size()));
      gens.emplace_back(std::move(t));
    }
  }
  return PermutationGroup(n, std::move(gens));
}

inline PermutationGroup load_group(const std::string& path) { return group_from_json(read_file(path)); }

inline Json group_to_json(const PermutationGroup& g) {
  Json gens = Json::array();
  for (const auto& s : g.generators()) gens.push_back(format_permutation(s));
  return Json{{"degree", g.degree()}, {"generators", std::move(gens)}};
}

inline Json catalog_entry_to_json(const catalog::CatalogEntry& e) {
  Json j = group_to_json(e.group);
  Json meta{{"name", e.name}, {"params", e.params}};
  if (e.expected_rc) meta["expected_rc"] = *e.expected_rc;
  if (!e.citation.empty()) meta["source"] = e.citation;
  j["catalog"] = std::move(meta);
  return j;
}

inline std::string index_key(const std::vector<std::size_t>& idx) {
  std::string s = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "]";
}

inline Json witness_to_json(const TuplePair& w, std::size_t k) {
  Json certs = Json::object();
  for (const auto& [idx, x] : w.transporters) certs[index_key(idx)] = format_permutation(x);
  return Json{{"I", w.I}, {"J", w.J}, {"k", k}, {"certs", std::move(certs)}, {"equivalent", false}};
}

inline TuplePair witness_from_json(const Json& j, std::size_t degree) {
  if (!j.is_object() || !j.contains("I") || !j.contains("J")) parse_fail("witness needs I and J");
  TuplePair w;
  w.I = read_points(j.at("I"), degree, "I");
  w.J = read_points(j.at("J"), degree, "J");
  if (w.I.size() != w.J.size()) fail(ErrorCode::kLengthMismatch);
  if (j.contains("certs")) {
    for (const auto& [key, val] : j.at("certs").items()) {
      Json idx = parse_text(key);
      if (!idx.is_array() || !val.is_string()) parse_fail("certificate keys are index arrays, values cycle strings");
      std::vector<std::size_t> sub;
      for (const auto& x : idx) {
        if (!x.is_number_unsigned()) parse_fail("certificate index must be non-negative");
        sub.push_back(x.get<std::size_t>());
      }
      w.transporters.emplace(std::move(sub), parse_permutation(val.get<std::string>(), degree));
    }
  }
  if (j.contains("k") && j.at("k").is_number_unsigned()) w.completeness_level = j.at("k").get<int>();
  return w;
}

inline Json certificate_to_json(const Certificate& c) {
  Json j{{"kind", c.kind}};
  if (c.witness) {
    auto k = c.witness->completeness_level > 0 ? static_cast<std::size_t>(c.witness->completeness_level) : 2;
    j["witness"] = witness_to_json(*c.witness, k);
  }
  if (c.element) j["element"] = format_permutation(*c.element);
  if (!c.details.empty()) j["details"] = c.details;
  return j;
}

inline Json outcome_to_json(const TestOutcome& o) {
  Json j{{"test", o.test}, {"verdict", std::string(verdict_name(o.verdict))}};
  j["certificate"] = o.certificate ? certificate_to_json(*o.certificate) : Json(nullptr);
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

inline Json statistic_to_json(const std::optional<StatisticWithWitness>& s) {
  if (!s) return "skipped(cap)";
  return Json{{"value", s->value}, {"witness", s->witness}};
}

inline Json statistics_to_json(const StatisticsReport& r) {
  Json j{{"degree", r.degree}, {"order", r.order.str()}, {"transitive", r.transitive}};
  j["primitive"] = r.primitive ? Json(*r.primitive) : Json(nullptr);
  if (r.rc) {
    Json rc{{"value", r.rc->rc}};
    rc["witness"] = r.rc->witness ? witness_to_json(*r.rc->witness, r.rc->rc - 1) : Json(nullptr);
    j["rc"] = std::move(rc);
  } else {
    j["rc"] = "skipped(cap)";
  }
  j["b"] = statistic_to_json(r.b);
  j["B"] = statistic_to_json(r.B);
  j["H"] = statistic_to_json(r.H);
  j["I"] = statistic_to_json(r.I);
  j["skipped"] = r.skipped;
  return j;
}

inline RelationalStructure structure_from_json(const Json& j) {
  const std::size_t n = read_size(j, "vertices");
  if (n == 0) parse_fail("vertices must be positive");
  const bool rel = j.contains("relations"), edg = j.contains("edges");
  if (rel == edg) parse_fail("exactly one of relations and edges is required");
  RelationalStructure r{n, {}};
  if (edg) {
    Relation e{2, {}};
    for (const auto& a : j.at("edges")) {
      Tuple t = read_points(a, n, "edges");
      if (t.size() != 2) parse_fail("edges are pairs");
      if (t[0] == t[1]) fail(ErrorCode::kBadParameter, "loops are not allowed in a digraph");
      e.tuples.insert(std::move(t));
    }
    r.relations.push_back(std::move(e));
  } else {
    const auto& rs = j.at("relations");
    if (!rs.is_array()) parse_fail("relations must be an array");
    for (const auto& x : rs) {
      Relation rr{read_size(x, "arity"), {}};
      if (!x.contains("tuples") || !x.at("tuples").is_array()) parse_fail("relation needs tuples");
      for (const auto& a : x.at("tuples")) rr.tuples.insert(read_points(a, n, "tuples"));
      r.relations.push_back(std::move(rr));
    }
  }
  r.validate();
  return r;
}

inline Json structure_to_json(const RelationalStructure& r) {
  Json rels = Json::array();
  for (const auto& x : r.relations) rels.push_back(Json{{"arity", x.arity}, {"tuples", x.tuples}});
  return Json{{"vertices", r.vertices}, {"relations", std::move(rels)}};
}

inline Json digraph_to_json(const Digraph& d) {
  Json e = Json::array();
  for (auto [u, v] : d.edges()) e.push_back({u, v});
  return Json{{"vertices", d.vertices()}, {"edges", std::move(e)}};
}

}  // namespace relc::io
