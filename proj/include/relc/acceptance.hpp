#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relc/catalog.hpp"
#include "relc/closure.hpp"
#include "relc/oracle.hpp"
#include "relc/relcomp.hpp"
#include "relc/structures.hpp"
#include "relc/witness_tests.hpp"

// End-to-end acceptance criteria, each a self-contained check with a time budget.
namespace relc::acceptance {

struct CriterionReport {
  int id = 0;
  std::string name;
  std::vector<std::string> tags;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Collects individual checks; the criterion passes when none failed.
class Checker {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  void note(const std::string& s) { notes_.push_back(s); }

  // Runs f and fails the check when it takes longer than budget seconds.
  template <class F>
  auto timed(const std::string& what, double budget, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > budget) check(false, what + " took " + std::to_string(s) + " s");
    return r;
  }

  bool pass() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    for (const auto& f : failures_) os << "; FAILED " << f;
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::size_t total_ = 0, failed_ = 0;
  std::vector<std::string> failures_, notes_;
};

struct Criterion {
  int id;
  std::string name;
  std::vector<std::string> tags;
  std::function<void(Checker&)> run;
};

namespace detail {

inline std::string label(const catalog::CatalogEntry& e) { return e.label(); }

inline void expect_rc(Checker& c, const catalog::CatalogEntry& e, int want, double budget) {
  int got = c.timed(label(e), budget, [&] { return relational_complexity(e.group).rc; });
  c.check(got == want, label(e) + ": RC " + std::to_string(got) + ", expected " + std::to_string(want));
}

inline int ceil_log2(std::size_t t) {
  int r = 0;
  while ((std::size_t{1} << r) < t) ++r;
  return r;
}

inline std::vector<catalog::CatalogEntry> entries_up_to(std::size_t degree) {
  std::vector<catalog::CatalogEntry> out;
  for (auto& e : catalog::standard_entries())
    if (e.group.degree() <= degree) out.push_back(std::move(e));
  return out;
}

inline std::vector<Permutation> oracle_elements(const PermutationGroup& g) {
  return oracle::closure(g.degree(), g.generators());
}

}  // namespace detail

inline std::vector<Criterion> criteria() {
  using namespace catalog;
  using detail::expect_rc;
  std::vector<Criterion> out;

  out.push_back({1, "RC of natural actions", {"rc"}, [](Checker& c) {
                   for (long n = 3; n <= 8; ++n) expect_rc(c, symmetric_natural(n), 2, 5);
                   for (long n = 4; n <= 7; ++n) expect_rc(c, alternating_natural(n), static_cast<int>(n - 1), 5);
                 }});

  out.push_back({2, "regular and binary families", {"rc"}, [](Checker& c) {
                   for (long p : {5, 7, 11, 13}) expect_rc(c, cyclic_regular(p), 2, 10);
                   for (long p : {5, 7, 11}) expect_rc(c, dihedral_polygon(p), 2, 10);
                   auto o = affine_orthogonal(3, 2);
                   c.check(o.group.degree() == 9, "F_9 x| O_2^-(3) has degree 9");
                   expect_rc(c, o, 2, 10);
                 }});

  out.push_back({3, "k-subsets", {"rc"}, [](Checker& c) {
                   expect_rc(c, k_subsets_action(Base::kSym, 6, 2), 3, 60);
                   auto big = k_subsets_action(Base::kSym, 8, 4);
                   c.check(big.group.degree() == 70, "Sym(8) on 4-subsets has degree 70");
                   expect_rc(c, big, 2 + floor_log2(4), 180);
                   expect_rc(c, k_subsets_action(Base::kAlt, 5, 2), 3, 60);
                   expect_rc(c, k_subsets_action(Base::kAlt, 6, 2), 4, 60);
                   expect_rc(c, k_subsets_action(Base::kAlt, 7, 3), 4, 60);
                 }});

  out.push_back({4, "perfect matchings", {"rc"}, [](Checker& c) {
                   expect_rc(c, matchings_action(Base::kSym, 6), 3, 60);
                   expect_rc(c, matchings_action(Base::kAlt, 6), 4, 60);
                   expect_rc(c, matchings_action(Base::kSym, 4), 2, 60);
                   expect_rc(c, matchings_action(Base::kAlt, 4), 2, 60);
                 }});

  // The value 2 + floor(log2 r) is attained at r = 4. For r = 2, 3 the exact RC is 2, which the
  // exhaustive tuple oracle confirms independently; those cases are reported, not hidden.
  out.push_back({5, "product action Sym(2) wr Sym(r)", {"rc"}, [](Checker& c) {
                   for (long r : {2, 3, 4}) {
                     auto e = product_action(2, r);
                     const int formula = 2 + floor_log2(r);
                     int got = c.timed(detail::label(e), 60, [&] { return relational_complexity(e.group).rc; });
                     if (r == 4) {
                       c.check(got == formula, "r=4: RC " + std::to_string(got) + ", expected " +
                                                   std::to_string(formula));
                       continue;
                     }
                     const auto n = e.group.degree();
                     int exact = oracle::naive_rc(n, detail::oracle_elements(e.group), n);
                     c.check(got == exact, "r=" + std::to_string(r) + ": RC " + std::to_string(got) +
                                               " disagrees with exhaustive oracle " + std::to_string(exact));
                     if (exact != formula)
                       c.note("r=" + std::to_string(r) + ": 2+floor(log2 r)=" + std::to_string(formula) +
                              " is unattainable, exact RC is " + std::to_string(exact));
                   }
                 }});

  out.push_back({6, "intransitive Sym(n) on n+2 points", {"rc"}, [](Checker& c) {
                   for (long n : {3, 4, 5}) expect_rc(c, intransitive_join(n), static_cast<int>(n), 30);
                 }});

  out.push_back({7, "statistic chain", {"stats"}, [](Checker& c) {
                   for (const auto& e : detail::entries_up_to(30)) {
                     auto s = statistics(e.group);
                     const auto L = detail::label(e);
                     if (!s.rc || !s.b || !s.B || !s.H || !s.I) {
                       c.check(false, L + ": statistic skipped by cap");
                       continue;
                     }
                     const int b = s.b->value, B = s.B->value, H = s.H->value, I = s.I->value;
                     c.check(b <= B && B <= H && H <= I, L + ": b <= B <= H <= I");
                     c.check(I <= b * detail::ceil_log2(e.group.degree()), L + ": I <= b ceil(log2 t)");
                     c.check(s.rc->rc <= H + 1, L + ": RC <= H + 1");
                   }
                 }});

  out.push_back({8, "height bound for primitive groups", {"stats"}, [](Checker& c) {
                   std::size_t seen = 0;
                   for (const auto& e : detail::entries_up_to(1000)) {
                     if (e.in_product_family || !is_transitive(e.group)) continue;
                     if (!is_primitive(e.group).primitive) continue;
                     ++seen;
                     const double t = static_cast<double>(e.group.degree());
                     const int H = height(e.group).value;
                     c.check(H < 9 * std::log2(t), detail::label(e) + ": H=" + std::to_string(H));
                   }
                   c.check(seen >= 10, "at least 10 primitive entries outside the product family");
                 }});

  out.push_back({9, "witness test soundness", {"tests"}, [](Checker& c) {
                   for (const auto& e : detail::entries_up_to(15)) {
                     BatteryOptions opt;
                     opt.run_all = true;
                     const int rc = relational_complexity(e.group).rc;
                     for (const auto& r : run_battery(e.group, opt)) {
                       if (r.verdict != Verdict::kNotBinary) continue;
                       c.check(rc > 2, detail::label(e) + ": " + r.test + " fired on a binary group");
                       c.check(certificate_holds(e.group, r), detail::label(e) + ": " + r.test + " certificate");
                     }
                   }
                   auto a5 = alternating_natural(5).group;
                   auto t1 = test1_character_bound(a5, {});
                   c.check(t1.verdict == Verdict::kNotBinary && t1.certificate &&
                               t1.certificate->details.count("ell") && t1.certificate->details.at("ell") == "4",
                           "Test 1 flags Alt(5) at ell = 4");
                   c.check(certificate_holds(a5, t1), "Test 1 certificate for Alt(5)");
                   for (long p : {5, 7}) {
                     auto g = agl1(p).group;
                     auto f = frobenius_test(g);
                     c.check(f.verdict == Verdict::kNotBinary && certificate_holds(g, f),
                             "Frobenius test flags AGL_1(" + std::to_string(p) + ")");
                   }
                 }});

  out.push_back({10, "closure identities", {"closure"}, [](Checker& c) {
                    for (long n : {4, 5, 6})
                      c.check(same_group(k_closure(alt(n), 2), sym(n)),
                              "2-closure of Alt(" + std::to_string(n) + ") is Sym(" + std::to_string(n) + ")");
                    auto pool = detail::entries_up_to(12);
                    std::mt19937_64 rng(0xC4E2);
                    std::shuffle(pool.begin(), pool.end(), rng);
                    for (std::size_t i = 0; i < 20; ++i) {
                      const auto& e = pool[i % pool.size()];
                      auto cl = k_closure(e.group, 2);
                      auto aut = automorphism_group(canonical_structure(e.group, 2));
                      c.check(same_group(cl, aut), detail::label(e) + ": 2-closure equals Aut of orbital structure");
                    }
                    c.note(std::to_string(std::min<std::size_t>(20, pool.size())) + " distinct entries sampled");
                  }});

  out.push_back({11, "homogeneous digraphs", {"structures"}, [](Checker& c) {
                    using namespace digraphs;
                    c.check(automorphism_group(H0()).order() == 24, "|Aut(H0)| = 24");
                    c.check(automorphism_group(H1()).order() == 16, "|Aut(H1)| = 16");
                    c.check(automorphism_group(H2()).order() == 48, "|Aut(H2)| = 48");
                    c.check(automorphism_group(direct_product(complete(3), complete(3))).order() == 72,
                            "|Aut(K3 x K3)| = 72");
                    for (std::size_t n = 4; n <= 6; ++n)
                      c.check(automorphism_group(cycle(n)).order() == 2 * n,
                              "|Aut(Delta_" + std::to_string(n) + ")| = " + std::to_string(2 * n));
                    c.check(is_homogeneous(H0()).homogeneous, "H0 homogeneous");
                    c.check(is_homogeneous(cycle(5)).homogeneous, "Delta_5 homogeneous");
                    c.check(is_homogeneous(composition(complete(2), empty(3))).homogeneous, "K2[Kbar3] homogeneous");
                    c.check(is_homogeneous(direct_product(complete(3), complete(3))).homogeneous,
                            "K3 x K3 homogeneous");
                    for (std::size_t n = 1; n <= 5; ++n)
                      for (const auto& d : lachlan_family(n))
                        c.check(is_homogeneous(d.graph).homogeneous, d.name + " homogeneous");
                    for (std::size_t n = 3; n <= 5; ++n) {
                      std::set<std::vector<char>> found, predicted;
                      for (const auto& d : enumerate_homogeneous(n)) found.insert(canonical_form(d));
                      for (const auto& d : lachlan_family(n)) predicted.insert(canonical_form(d.graph));
                      c.check(found == predicted, "enumeration on " + std::to_string(n) + " vertices");
                    }
                  }});

  out.push_back({12, "structural RC equals tuple RC", {"structures", "rc"}, [](Checker& c) {
                    for (const auto& e : detail::entries_up_to(6)) {
                      auto s = structural_rc(e.group, 6);
                      const int t = relational_complexity(e.group).rc;
                      c.check(!s.capped && s.rc == t, detail::label(e) + ": structural " + std::to_string(s.rc) +
                                                          ", tuple " + std::to_string(t));
                    }
                  }});

  out.push_back({13, "diagonal patch witness", {"tests"}, [](Checker& c) {
                    for (const char* t : {"sym:3", "alt:4", "alt:5"}) {
                      auto [T, name] = named_small_group(t);
                      auto d = diagonal_patch_witness(T);
                      c.check(d.outcome.verdict == Verdict::kNotBinary && certificate_holds(d.group, d.outcome),
                              name + ": verified NotBinary certificate");
                    }
                  }});

  out.push_back({14, "oracle equivalence", {"rc"}, [](Checker& c) {
                    for (const auto& e : detail::entries_up_to(7)) {
                      const auto n = e.group.degree();
                      int want = oracle::naive_rc(n, detail::oracle_elements(e.group), n);
                      c.check(relational_complexity(e.group).rc == want, detail::label(e));
                    }
                    std::mt19937_64 rng(0xC4E2);
                    for (int i = 0; i < 50; ++i) {
                      PermutationGroup g(6, oracle::random_generators(rng, 6));
                      int want = oracle::naive_rc(6, oracle::closure(6, g.generators()), 6);
                      c.check(relational_complexity(g).rc == want, "random subgroup " + std::to_string(i));
                    }
                  }});

  return out;
}

inline bool selected(const Criterion& c, const std::string& filter) {
  if (filter.empty() || filter == "all") return true;
  std::stringstream ss(filter);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == std::to_string(c.id)) return true;
    for (const auto& t : c.tags)
      if (t == tok) return true;
  }
  return false;
}

inline CriterionReport run_criterion(const Criterion& c) {
  CriterionReport r;
  r.id = c.id;
  r.name = c.name;
  r.tags = c.tags;
  Checker chk;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(chk);
  } catch (const std::exception& e) {
    chk.check(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = chk.pass();
  r.detail = chk.summary();
  return r;
}

// Runs the selected criteria on up to `jobs` threads; reports come back in criterion order.
inline std::vector<CriterionReport> run(const std::string& filter = "", unsigned jobs = 1) {
  std::vector<Criterion> chosen;
  for (auto& c : criteria())
    if (selected(c, filter)) chosen.push_back(std::move(c));
  std::vector<CriterionReport> out(chosen.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < chosen.size(); ++i) out[i] = run_criterion(chosen[i]);
    return out;
  }
  std::vector<std::future<void>> running;
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= chosen.size()) return;
        i = next++;
      }
      out[i] = run_criterion(chosen[i]);
    }
  };
  for (unsigned j = 0; j < jobs; ++j) running.push_back(std::async(std::launch::async, worker));
  for (auto& f : running) f.get();
  return out;
}

}  // namespace relc::acceptance
