#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "relc/catalog.hpp"
#include "relc/closure.hpp"
#include "relc/relcomp.hpp"

namespace relc {

enum class Verdict { kNotBinary, kInconclusive };

inline std::string verdict_name(Verdict v) { return v == Verdict::kNotBinary ? "NotBinary" : "Inconclusive"; }

// kind is "witness", "closure_element" or "inequality". A witness pair is always checkable
// with subtuple_complete and orbit_equivalent; a closure element must lie outside G.
struct Certificate {
  std::string kind;
  std::optional<TuplePair> witness;
  std::optional<Permutation> element;
  std::map<std::string, std::string> details;
};

struct TestOutcome {
  std::string test;
  Verdict verdict = Verdict::kInconclusive;
  std::optional<Certificate> certificate;
  std::string note;
};

namespace detail {

inline TestOutcome inconclusive(std::string test, std::string note = {}) {
  return {std::move(test), Verdict::kInconclusive, std::nullopt, std::move(note)};
}

inline TestOutcome not_binary(std::string test, Certificate c, std::string note = {}) {
  return {std::move(test), Verdict::kNotBinary, std::move(c), std::move(note)};
}

// The pair with its k-subset transporters if it is k-complete and inequivalent.
inline std::optional<TuplePair> checked_witness(const PermutationGroup& g, const Tuple& I, const Tuple& J,
                                                std::size_t k = 2) {
  if (I.size() <= k) return std::nullopt;
  auto c = subtuple_complete(g, I, J, k);
  if (!c.complete || orbit_equivalent(g, I, J)) return std::nullopt;
  return c.pair;
}

inline Certificate witness_certificate(TuplePair w) {
  Certificate c;
  c.kind = "witness";
  c.witness = std::move(w);
  return c;
}

inline void require_transitive(const PermutationGroup& g) {
  if (!is_transitive(g)) fail(ErrorCode::kNotTransitive);
}

inline std::string str(const Order& o) { return o.str(); }

inline bool is_power_of(Order n, long p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace detail

// ---- Test 1: permutation character bound ----

// r_l for l = 0..ell_max as (1/|G|) sum_g fix(g)(fix(g)-1)...(fix(g)-l+1).
inline std::vector<Order> r_ell_by_elements(const PermutationGroup& g, std::size_t ell_max,
                                            const Order& max_order = 10000000) {
  if (g.order() > max_order) fail(ErrorCode::kGroupTooLarge, "order " + g.order().str());
  std::vector<unsigned __int128> sums(ell_max + 1, 0);
  g.chain().for_each_element([&](const Permutation& x) {
    const std::size_t f = x.fixed_point_count();
    unsigned __int128 prod = 1;
    for (std::size_t l = 0; l <= ell_max; ++l) {
      sums[l] += prod;
      prod *= f > l ? f - l : 0;
    }
    return true;
  });
  std::vector<Order> out;
  for (auto s : sums) {
    Order v = 0;
    for (int shift = 120; shift >= 0; shift -= 8) v = (v << 8) + static_cast<unsigned>((s >> shift) & 0xff);
    out.push_back(v / g.order());
  }
  return out;
}

// Canonical distinct l-tuples for l = 0..ell_max (one per G-orbit), or nullopt past `cap` tuples.
inline std::optional<std::vector<std::vector<Tuple>>> distinct_tuple_orbits(const PermutationGroup& g,
                                                                             std::size_t ell_max, std::size_t cap) {
  TupleTree tree(g);
  std::vector<std::vector<Tuple>> reps(ell_max + 1);
  std::size_t total = 0;
  bool over = false;
  std::function<void(TupleTree::Node*)> dfs = [&](TupleTree::Node* n) {
    if (over) return;
    reps[n->prefix.size()].push_back(n->prefix);
    if (++total > cap) {
      over = true;
      return;
    }
    if (n->prefix.size() == ell_max) return;
    std::vector<Point> rs = n->orbits.reps();
    for (Point r : rs) {
      if (std::find(n->prefix.begin(), n->prefix.end(), r) != n->prefix.end()) continue;
      dfs(tree.child(n, r));
      if (over) return;
    }
  };
  dfs(tree.root());
  if (over) return std::nullopt;
  return reps;
}

struct CharacterBoundOptions {
  std::size_t ell_max = 5;
  Order max_order = 10000000;
  std::size_t max_tuple_orbits = 2000000;
};

inline TestOutcome test1_character_bound(const PermutationGroup& g, const CharacterBoundOptions& opt = {}) {
  const std::string name = "test1";
  if (opt.ell_max < 2 || opt.ell_max > 5) fail(ErrorCode::kBadParameter, "ell_max must be in 2..5");
  detail::require_transitive(g);
  const std::size_t ell_max = std::min(opt.ell_max, g.degree());
  std::optional<std::vector<Order>> by_elements;
  if (g.order() <= opt.max_order) by_elements = r_ell_by_elements(g, ell_max, opt.max_order);
  auto orbit_reps = distinct_tuple_orbits(g, ell_max, opt.max_tuple_orbits);
  if (!by_elements && !orbit_reps) fail(ErrorCode::kGroupTooLarge, "neither counting path is affordable");
  std::vector<Order> r(ell_max + 1);
  for (std::size_t l = 0; l <= ell_max; ++l) {
    if (orbit_reps) r[l] = (*orbit_reps)[l].size();
    if (by_elements) {
      if (orbit_reps && (*by_elements)[l] != r[l])
        throw std::logic_error("r_" + std::to_string(l) + " disagrees between counting paths");
      r[l] = (*by_elements)[l];
    }
  }
  if (ell_max < 3) return detail::inconclusive(name, "degree below 3");
  for (std::size_t l = 3; l <= ell_max; ++l) {
    Order bound = boost::multiprecision::pow(r[2], static_cast<unsigned>(l * (l - 1) / 2));
    if (r[l] <= bound) continue;
    Certificate c;
    c.kind = "inequality";
    c.details = {{"ell", std::to_string(l)},
                 {"r_ell", detail::str(r[l])},
                 {"r_2", detail::str(r[2])},
                 {"bound", detail::str(bound)}};
    if (orbit_reps) {
      // Two l-orbits sharing the orbital of every position pair form a witness.
      TupleTree pairs(g);
      std::map<std::vector<Point>, Tuple> seen;
      for (const auto& tup : (*orbit_reps)[l]) {
        std::vector<Point> key;
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t j = i + 1; j < l; ++j) {
            auto [node, _] = pairs.canonicalize({tup[i], tup[j]});
            key.insert(key.end(), node->prefix.begin(), node->prefix.end());
          }
        auto [it, fresh] = seen.emplace(key, tup);
        if (fresh) continue;
        auto w = detail::checked_witness(g, it->second, tup);
        if (!w) throw std::logic_error("pigeonhole pair is not a witness");
        c.witness = std::move(*w);
        break;
      }
    }
    return detail::not_binary(name, std::move(c), "r_" + std::to_string(l) + " exceeds r_2^(l(l-1)/2)");
  }
  return detail::inconclusive(name, "bound holds for l <= " + std::to_string(ell_max));
}

// ---- Test 2: k-closure ----

inline TestOutcome test2_strongly_non_k_ary(const PermutationGroup& g, std::size_t k = 2) {
  const std::string name = "test2";
  if (g.degree() > kMaxClosureDegree) return detail::inconclusive(name, "degree above closure bound");
  auto cl = k_closure(g, k);
  if (cl.order() == g.order()) return detail::inconclusive(name, "group is " + std::to_string(k) + "-closed");
  for (const auto& x : cl.generators()) {
    if (g.contains(x)) continue;
    Tuple I(g.degree());
    std::iota(I.begin(), I.end(), Point{0});
    auto w = detail::checked_witness(g, I, x.apply(I), k);
    if (!w) throw std::logic_error("closure element does not give a witness");
    Certificate c;
    c.kind = "closure_element";
    c.element = x;
    c.witness = std::move(*w);
    c.details = {{"k", std::to_string(k)}, {"closure_order", cl.order().str()}};
    return detail::not_binary(name, std::move(c), "not " + std::to_string(k) + "-closed");
  }
  throw std::logic_error("closure larger than group but every generator lies in it");
}

// ---- Test 3: direct analysis of triples ----

inline TestOutcome test3_triples(const PermutationGroup& g, std::size_t max_degree = 10000) {
  const std::string name = "test3";
  if (g.degree() > max_degree) fail(ErrorCode::kDegreeTooLarge, std::to_string(g.degree()));
  detail::require_transitive(g);
  const Point alpha = 0;
  auto ga = pointwise_stabilizer(g, {alpha});
  for (const auto& ob : orbits(ga)) {
    const Point beta = ob.front();
    if (beta == alpha) continue;
    auto gb = pointwise_stabilizer(g, {beta});
    auto gab = pointwise_stabilizer(g, {alpha, beta});
    for (const auto& oc : orbits(gab)) {
      const Point gamma = oc.front();
      if (gamma == alpha || gamma == beta) continue;
      auto from_a = orbit(ga, gamma);
      std::vector<char> in_b(g.degree(), 0), in_ab(g.degree(), 0);
      for (Point x : orbit(gb, gamma)) in_b[x] = 1;
      for (Point x : oc) in_ab[x] = 1;
      std::sort(from_a.begin(), from_a.end());
      for (Point gp : from_a) {
        // (alpha, beta, gamma') is equivalent to (alpha, beta, gamma) iff gamma' is in gamma^(G_ab)
        if (!in_b[gp] || in_ab[gp]) continue;
        auto w = detail::checked_witness(g, {alpha, beta, gamma}, {alpha, beta, gp});
        if (!w) throw std::logic_error("triple pair is not a witness");
        return detail::not_binary(name, detail::witness_certificate(std::move(*w)),
                                  "2-subtuple completeness does not imply 3-subtuple completeness");
      }
    }
  }
  return detail::inconclusive(name, "2-subtuple completeness implies 3-subtuple completeness on triples");
}

// ---- Test 4: suborbits ----

inline TestOutcome test4_suborbits(const PermutationGroup& g, const Caps& caps = {}) {
  const std::string name = "test4";
  detail::require_transitive(g);
  auto b = suborbit_rc_lower_bound(g, caps);
  if (b.rc <= 2 || !b.witness) return detail::inconclusive(name, "every suborbit action is binary");
  auto lifted = lift_suborbit_witness(*b.witness, b.suborbit, 0);
  auto w = detail::checked_witness(g, lifted.I, lifted.J);
  if (!w) throw std::logic_error("lifted suborbit witness failed");
  Certificate c = detail::witness_certificate(std::move(*w));
  c.details = {{"suborbit_size", std::to_string(b.suborbit.size())}, {"suborbit_rc", std::to_string(b.rc)}};
  return detail::not_binary(name, std::move(c), "a suborbit action is not binary");
}

// ---- Test 5: special primes ----

namespace detail {

inline std::vector<Point> fixed_points(const Permutation& x) {
  std::vector<Point> out;
  for (Point i = 0; i < x.degree(); ++i)
    if (x[i] == i) out.push_back(i);
  return out;
}

// V = <g, h> elementary abelian of order p^2, k in V outside <g> and <h>. Builds the
// strongly non-binary configuration on Fix(g) u Fix(h) u Fix(k): tau acts as h on
// Fix(g) \ Fix(V) and is the identity elsewhere.
inline std::optional<TuplePair> special_prime_witness(const PermutationGroup& G, const Permutation& g,
                                                      const Permutation& h, const Permutation& k, long p) {
  const std::size_t t = G.degree();
  std::vector<char> fg(t), fh(t), fk(t);
  for (Point i = 0; i < t; ++i) {
    fg[i] = g[i] == i;
    fh[i] = h[i] == i;
    fk[i] = k[i] == i;
  }
  Tuple lambda;
  std::vector<char> in_a(t, 0);
  for (Point i = 0; i < t; ++i) {
    const bool fixed_v = fg[i] && fh[i];
    if (fg[i] || fh[i] || fk[i]) lambda.push_back(i);
    if (fg[i] && !fixed_v) in_a[i] = 1;
  }
  Point a0 = 0;
  bool any = false;
  for (Point i = 0; i < t; ++i)
    if (in_a[i]) {
      a0 = i;
      any = true;
      break;
    }
  if (!any) return std::nullopt;
  // power of k agreeing with h on A
  std::optional<Permutation> kj;
  Permutation acc = k;
  for (long j = 1; j < p; ++j, acc *= k)
    if (acc[a0] == h[a0]) {
      kj = acc;
      break;
    }
  if (!kj) return std::nullopt;
  for (Point i = 0; i < t; ++i)
    if (in_a[i] && (*kj)[i] != h[i]) return std::nullopt;
  Tuple J;
  for (Point x : lambda) J.push_back(in_a[x] ? h[x] : x);
  return checked_witness(G, lambda, J);
}

}  // namespace detail

struct SpecialPrimeOptions {
  std::uint64_t seed = 0xC4E2;
  Order exhaustive_limit = 100000;
  std::size_t sylow_trials = 1000;
};

inline TestOutcome test5_special_primes(const PermutationGroup& G, long p, const SpecialPrimeOptions& opt = {}) {
  const std::string name = "test5";
  if (!catalog::is_prime(p)) fail(ErrorCode::kBadParameter, "p must be prime");
  const Order n = G.order();
  if (n % p != 0) fail(ErrorCode::kPrimeDoesNotDivide, std::to_string(p));
  detail::require_transitive(G);
  const std::size_t t = G.degree();

  // Order-p elements to search, with a conjugacy test among them.
  std::vector<Permutation> E;
  std::unordered_map<Permutation, std::size_t, PermutationHash> cls;
  bool exhaustive = n <= opt.exhaustive_limit;
  bool full_sylow = exhaustive;
  if (exhaustive) {
    G.chain().for_each_element([&](const Permutation& x) {
      if (x.order() == static_cast<std::uint64_t>(p)) E.push_back(x);
      return true;
    });
    std::sort(E.begin(), E.end());
    std::vector<std::size_t> parent(E.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::unordered_map<Permutation, std::size_t, PermutationHash> pos;
    for (std::size_t i = 0; i < E.size(); ++i) pos.emplace(E[i], i);
    for (std::size_t i = 0; i < E.size(); ++i)
      for (const auto& s : G.generators()) {
        std::size_t a = find(i), b = find(pos.at(E[i].conjugate_by(s)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    for (std::size_t i = 0; i < E.size(); ++i) cls.emplace(E[i], find(i));
  } else {
    // Sylow-like subgroup: grow a p-group by random p-elements while it stays a p-group.
    Order p_part = 1;
    for (Order m = n; m % p == 0; m /= p) p_part *= p;
    std::mt19937_64 rng(opt.seed);
    auto random_p_element = [&]() -> std::optional<Permutation> {
      for (int i = 0; i < 1000; ++i) {
        auto x = G.chain().random_element(rng);
        auto o = x.order();
        if (o % static_cast<std::uint64_t>(p) == 0) return x.pow(static_cast<long long>(o / p));
      }
      return std::nullopt;
    };
    std::vector<Permutation> sg;
    if (auto x = random_p_element()) sg.push_back(*x);
    Order so = sg.empty() ? Order(1) : Order(p);
    for (std::size_t trial = 0; trial < opt.sylow_trials && so < p_part && !sg.empty(); ++trial) {
      auto z = random_p_element();
      if (!z) break;
      auto cand = sg;
      cand.push_back(*z);
      Order co = PermutationGroup(t, cand).order();
      if (co > so && detail::is_power_of(co, p)) {
        sg = std::move(cand);
        so = co;
      }
    }
    full_sylow = so == p_part;
    if (so > opt.exhaustive_limit) return detail::inconclusive(name, "sampled p-subgroup too large to enumerate");
    PermutationGroup S(t, sg);
    S.chain().for_each_element([&](const Permutation& x) {
      if (x.order() == static_cast<std::uint64_t>(p)) E.push_back(x);
      return true;
    });
    std::sort(E.begin(), E.end());
  }
  auto conjugate = [&](const Permutation& a, const Permutation& b) {
    if (exhaustive) return cls.at(a) == cls.at(b);
    return element_conjugator(G, a, b).has_value();
  };
  // <b> conjugate to <a>
  auto subgroup_conjugate = [&](const Permutation& a, const Permutation& b) {
    Permutation bi = b;
    for (long i = 1; i < p; ++i, bi *= b)
      if (conjugate(a, bi)) return true;
    return false;
  };
  auto in_cyclic = [&](const Permutation& a, const Permutation& b) {
    Permutation ai = a;
    for (long i = 1; i < p; ++i, ai *= a)
      if (ai == b) return true;
    return false;
  };
  auto try_witness = [&](const Permutation& g, const Permutation& h, const Permutation& k) -> std::optional<TuplePair> {
    const Permutation* v[3] = {&g, &h, &k};
    for (int r = 0; r < 3; ++r)
      if (auto w = detail::special_prime_witness(G, *v[r], *v[(r + 1) % 3], *v[(r + 2) % 3], p)) return w;
    return std::nullopt;
  };
  auto make = [&](std::string config, const Permutation& g, const Permutation& h, TuplePair w) {
    Certificate c = detail::witness_certificate(std::move(w));
    c.details = {{"configuration", config},
                 {"p", std::to_string(p)},
                 {"g", format_permutation(g)},
                 {"h", format_permutation(h)}};
    return detail::not_binary(name, std::move(c), config + " configuration");
  };

  std::set<std::size_t> tried;
  const Order stab = n / t;
  const bool m2_divisibility = t % static_cast<std::size_t>(p) == 0 && stab % p == 0 && stab % (Order(p) * p) != 0;
  std::size_t max_fix = 0;
  for (const auto& x : E) max_fix = std::max(max_fix, x.fixed_point_count());
  bool found_configuration = false;
  for (std::size_t gi = 0; gi < E.size(); ++gi) {
    const auto& g = E[gi];
    if (exhaustive && !tried.insert(cls.at(g)).second) continue;
    const std::size_t fix_g = g.fixed_point_count();
    for (const auto& h : E) {
      if (g * h != h * g || in_cyclic(g, h)) continue;
      // multiplicative-closure: V = <g, h> has order p^2 here
      if (m2_divisibility && fix_g > 0) {
        Permutation gh = g * h;
        if (subgroup_conjugate(g, h) && subgroup_conjugate(g, gh)) {
          found_configuration = true;
          if (auto w = try_witness(g, h, gh)) return make("special prime (stabilizer)", g, h, std::move(*w));
        }
      }
      if (full_sylow && fix_g == max_fix) {
        Permutation ghi = g * h.inverse();
        std::size_t fix_v = 0;
        for (Point i = 0; i < t; ++i) fix_v += g[i] == i && h[i] == i;
        if (fix_v < fix_g && conjugate(g, h) && conjugate(g, ghi)) {
          found_configuration = true;
          if (auto w = try_witness(g, h, ghi)) return make("special prime (fixed points)", g, h, std::move(*w));
        }
      }
    }
  }
  if (found_configuration) return detail::inconclusive(name, "configuration found but no explicit witness verified");
  return detail::inconclusive(name, exhaustive ? "no configuration" : "no configuration among sampled p-elements");
}

// ---- Test 6: trivial two-point stabilizer ----

struct TwoPointOptions {
  std::size_t trials = 100000;
  std::uint64_t seed = 0xC4E2;
  Order max_stabilizer = 100000;
};

inline TestOutcome test6_trivial_two_point(const PermutationGroup& G, const TwoPointOptions& opt = {}) {
  const std::string name = "test6";
  detail::require_transitive(G);
  const std::size_t t = G.degree();
  const Point w0 = 0;
  auto chain = G.chain_with_base({w0});
  auto M = pointwise_stabilizer(G, {w0});
  if (M.is_trivial()) return detail::inconclusive(name, "point stabilizer is trivial");
  if (M.order() > opt.max_stabilizer) return detail::inconclusive(name, "point stabilizer too large to enumerate");
  auto m_elements = elements(M);
  OrbitForest m_orbits(t, M.generators());
  // x_w maps w0 to w, so G_w = M^(x_w)
  auto x_of = [&](Point w) { return chain.transversal(0, w); };
  std::vector<int> trivial_pair(t, -1);  // G_w0 n G_w1 = 1
  std::set<std::pair<Point, Point>> done;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Point> pick(0, static_cast<Point>(t - 1));
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const Point w1 = pick(rng), w2 = pick(rng);
    if (w1 == w0 || w2 == w0 || w1 == w2) continue;
    if (!done.insert({w1, w2}).second) continue;
    if (trivial_pair[w1] < 0) trivial_pair[w1] = pointwise_stabilizer(G, {w0, w1}).is_trivial() ? 1 : 0;
    if (!trivial_pair[w1]) continue;
    // w1^(g^-1) in w1^(G_w2) with G_w2 = M^x: compare M-orbits after pulling back by x.
    const Permutation x = x_of(w2), xi = x.inverse();
    for (const auto& g : m_elements) {
      if (g[w2] == w2) continue;
      const Point a = g.inverse()[w1];
      if (!m_orbits.same_orbit(xi[a], xi[w1])) continue;
      auto w = detail::checked_witness(G, {w0, w1, w2}, {w0, w1, g[w2]});
      if (!w) throw std::logic_error("two-point pair is not a witness");
      Certificate c = detail::witness_certificate(std::move(*w));
      c.element = g;
      c.details = {{"trials", std::to_string(trial + 1)}};
      return detail::not_binary(name, std::move(c), "trivial two-point stabilizer configuration");
    }
  }
  return detail::inconclusive(name, "no configuration in " + std::to_string(opt.trials) + " trials");
}

// ---- Frobenius criteria ----

struct FrobeniusData {
  Order complement_order;
};

// Throws NotFrobenius unless G is transitive with nontrivial point stabilizers and trivial
// two-point stabilizers.
inline FrobeniusData frobenius_structure(const PermutationGroup& g) {
  detail::require_transitive(g);
  auto m = pointwise_stabilizer(g, {0});
  if (m.is_trivial()) fail(ErrorCode::kNotFrobenius, "point stabilizer is trivial");
  for (const auto& o : orbits(m)) {
    if (o.front() == 0) continue;
    if (!pointwise_stabilizer(g, {0, o.front()}).is_trivial())
      fail(ErrorCode::kNotFrobenius, "nontrivial two-point stabilizer");
  }
  return {m.order()};
}

inline TestOutcome frobenius_test(const PermutationGroup& g) {
  const std::string name = "frobenius";
  auto f = frobenius_structure(g);
  if (f.complement_order == 2) return detail::inconclusive(name, "Frobenius complement has order 2");
  // Some c has c^(G_a) n c^(G_b) larger than {c}; then (a,b,c), (a,b,c') is a witness.
  const std::size_t t = g.degree();
  const Point c = 0;
  std::vector<std::vector<char>> orb(t, std::vector<char>(t, 0));
  for (Point a = 1; a < t; ++a)
    for (Point x : orbit(pointwise_stabilizer(g, {a}), c)) orb[a][x] = 1;
  for (Point a = 1; a < t; ++a)
    for (Point b = a + 1; b < t; ++b)
      for (Point x = 1; x < t; ++x) {
        if (x == a || x == b || !orb[a][x] || !orb[b][x]) continue;
        auto w = detail::checked_witness(g, {a, b, c}, {a, b, x});
        if (!w) throw std::logic_error("Frobenius pair is not a witness");
        Certificate cert = detail::witness_certificate(std::move(*w));
        cert.details = {{"complement_order", f.complement_order.str()}};
        return detail::not_binary(name, std::move(cert), "Frobenius complement of order other than 2");
      }
  throw std::logic_error("Frobenius complement above 2 without a witness");
}

// F normal in G with a Frobenius orbit whose kernel is cyclic and whose complement has an
// element of order above 2.
inline TestOutcome frobenius_cyclic_kernel_test(const PermutationGroup& G, const PermutationGroup& F,
                                                Order max_order = 100000) {
  const std::string name = "frobenius_cyclic_kernel";
  if (!is_normal_subgroup(F, G)) fail(ErrorCode::kNotNormal);
  for (const auto& lam : orbits(F)) {
    if (lam.size() < 3) continue;
    auto ia = induced_action(F, lam);
    const auto& H = ia.image;
    if (H.order() > max_order) continue;
    std::vector<Permutation> elts = elements(H);
    std::vector<Permutation> kernel, complement;
    bool frob = true;
    for (const auto& x : elts) {
      std::size_t f = x.fixed_point_count();
      if (f == 0 || x.is_identity()) kernel.push_back(x);
      else if (f > 1) frob = false;
      if (x[0] == 0 && !x.is_identity()) complement.push_back(x);
    }
    if (!frob || complement.empty()) continue;
    const std::size_t n = kernel.size();
    std::optional<Permutation> y;
    for (const auto& x : kernel)
      if (x.order() == n) {
        y = x;
        break;
      }
    if (!y) continue;
    for (const auto& x : complement) {
      if (x.order() <= 2) continue;
      Permutation yx = y->conjugate_by(x);
      long k = 0;
      for (long e = 1; e < static_cast<long>(n); ++e)
        if (y->pow(e) == yx) k = e;
      if (k == 0) throw std::logic_error("complement does not normalize the kernel");
      const long nn = static_cast<long>(n);
      const long a = catalog::mod((1 + k) * catalog::inverse_mod(k, nn), nn);
      const long b = catalog::mod(1 + k, nn);
      auto pt = [&](long e) { return ia.points[y->pow(e)[0]]; };
      Tuple I{ia.points[0], pt(1), pt(a)}, J{ia.points[0], pt(1), pt(b)};
      auto w = detail::checked_witness(G, I, J);
      if (!w) throw std::logic_error("cyclic kernel pair is not a witness");
      Certificate c = detail::witness_certificate(std::move(*w));
      c.details = {{"kernel_order", std::to_string(n)}, {"k", std::to_string(k)}, {"a", std::to_string(a)},
                   {"b", std::to_string(b)}};
      return detail::not_binary(name, std::move(c), "cyclic Frobenius kernel with complement element of order > 2");
    }
  }
  return detail::inconclusive(name, "no Frobenius orbit with cyclic kernel and complement element of order > 2");
}

// F = T x| C inside G with C acting fixed-point-freely on T and F_alpha = C.
inline TestOutcome frobenius_subgroup_test(const PermutationGroup& G, const std::vector<Permutation>& T_gens,
                                           const std::vector<Permutation>& C_gens, Point alpha,
                                           Order max_order = 100000) {
  const std::string name = "frobenius_subgroup";
  const std::size_t t = G.degree();
  PermutationGroup T(t, T_gens), C(t, C_gens);
  std::vector<Permutation> fg = T_gens;
  fg.insert(fg.end(), C_gens.begin(), C_gens.end());
  PermutationGroup F(t, fg);
  if (!is_subgroup(F, G)) fail(ErrorCode::kConditionFailed, "F is not contained in G");
  if (F.order() > max_order) fail(ErrorCode::kGroupTooLarge);
  if (F.order() != T.order() * C.order()) fail(ErrorCode::kConditionFailed, "F is not T x| C");
  for (const auto& c : C_gens)
    for (const auto& x : T_gens)
      if (!T.contains(x.conjugate_by(c))) fail(ErrorCode::kConditionFailed, "C does not normalize T");
  auto t_elts = elements(T), c_elts = elements(C);
  for (const auto& c : c_elts) {
    if (c.is_identity()) continue;
    for (const auto& x : t_elts)
      if (!x.is_identity() && x.conjugate_by(c) == x)
        fail(ErrorCode::kConditionFailed, "C does not act fixed-point-freely on T");
  }
  for (const auto& c : C_gens)
    if (c[alpha] != alpha) fail(ErrorCode::kConditionFailed, "C does not fix alpha");
  auto lam = orbit(F, alpha);
  if (F.order() / lam.size() != C.order()) fail(ErrorCode::kConditionFailed, "F_alpha differs from C");
  if (lam.size() < 3) return detail::inconclusive(name, "orbit too small");
  std::sort(lam.begin(), lam.end());
  // beta with |G_(alpha, beta)| = m; F-transitivity on Lambda puts alpha first in some minimal pair
  Point beta = alpha;
  Order m = -1;
  for (Point x : lam) {
    if (x == alpha) continue;
    Order o = pointwise_stabilizer(G, {alpha, x}).order();
    if (m < 0 || o < m) {
      m = o;
      beta = x;
    }
  }
  const Order cs = C.order();
  const Order num = (cs - 1) * (cs - 2), den = Order(lam.size()) - 2;
  const Order k = (num + den - 1) / den;
  if (k < m)
    return detail::inconclusive(name, "ceil((|C|-1)(|C|-2)/(|Lambda|-2)) = " + k.str() + " < m = " + m.str());
  std::map<Point, std::vector<Point>> deltas;
  for (const auto& c1 : c_elts) {
    if (c1.is_identity()) continue;
    std::optional<Permutation> t1;
    for (const auto& x : t_elts)
      if ((x * c1)[beta] == beta) t1 = x;
    if (!t1) throw std::logic_error("no kernel element moves the complement into G_beta");
    for (const auto& c2 : c_elts) {
      if (c2.is_identity() || c2 == c1) continue;
      Permutation z = *t1 * c1 * c2.inverse();
      for (Point gamma : lam)
        if (z[gamma] == gamma) deltas[gamma].push_back(c2[gamma]);
    }
  }
  auto gab = pointwise_stabilizer(G, {alpha, beta});
  const auto best = std::max_element(deltas.begin(), deltas.end(),
                                     [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
  if (best == deltas.end()) throw std::logic_error("no triples from the complement");
  const Point gamma = best->first;
  auto og = orbit(gab, gamma);
  for (Point d : best->second) {
    if (std::find(og.begin(), og.end(), d) != og.end()) continue;
    auto w = detail::checked_witness(G, {alpha, beta, gamma}, {alpha, beta, d});
    if (!w) throw std::logic_error("Frobenius subgroup pair is not a witness");
    Certificate c = detail::witness_certificate(std::move(*w));
    c.details = {{"complement_order", cs.str()}, {"orbit_size", std::to_string(lam.size())}, {"m", m.str()},
                 {"bound", k.str()}};
    return detail::not_binary(name, std::move(c), "counting inequality holds");
  }
  throw std::logic_error("counting inequality holds but no witness found");
}

// ---- Beautiful subsets ----

inline bool is_two_transitive(const PermutationGroup& h) {
  if (h.degree() < 2 || !is_transitive(h)) return false;
  auto s = pointwise_stabilizer(h, {0});
  return orbit(s, 1).size() == h.degree() - 1;
}

// Whether H acts 2-transitively on the orbit of w.
inline bool check_2transitive_orbit(const PermutationGroup& H, Point w) {
  auto o = orbit(H, w);
  if (o.size() < 2) return false;
  return is_two_transitive(induced_action(H, o).image);
}

// Whether a group on n points contains Alt(n).
inline bool contains_alternating(const PermutationGroup& h) {
  const std::size_t n = h.degree();
  if (n >= 5) return h.order() * 2 >= catalog::factorial(static_cast<long>(n));
  if (n < 3) return true;
  for (Point a = 0; a < n; ++a)
    for (Point b = 0; b < n; ++b)
      for (Point c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (!h.contains(catalog::cycle_perm(n, {a, b, c}))) return false;
      }
  return true;
}

// S normal in G (S = G when s_gens is empty); NotBinary when S^Lambda is 2-transitive and
// contains neither Alt(Lambda) nor Sym(Lambda).
inline TestOutcome check_beautiful(const PermutationGroup& G, const std::vector<Permutation>& s_gens,
                                   std::vector<Point> lambda) {
  const std::string name = "beautiful";
  std::sort(lambda.begin(), lambda.end());
  lambda.erase(std::unique(lambda.begin(), lambda.end()), lambda.end());
  if (lambda.size() < 2) fail(ErrorCode::kBadParameter, "need |Lambda| >= 2");
  for (Point x : lambda) check_point(G, x);
  PermutationGroup S = s_gens.empty() ? G : PermutationGroup(G.degree(), s_gens);
  if (!is_normal_subgroup(S, G)) fail(ErrorCode::kNotNormal);
  auto sl = induced_action(S, lambda).image;
  if (!is_two_transitive(sl)) return detail::inconclusive(name, "S^Lambda is not 2-transitive");
  if (contains_alternating(sl)) return detail::inconclusive(name, "S^Lambda contains Alt(Lambda)");
  // G^Lambda is a proper 2-transitive group; a transposition outside it gives the witness.
  auto gl = induced_action(G, lambda).image;
  const std::size_t n = lambda.size();
  for (Point a = 0; a < n; ++a)
    for (Point b = a + 1; b < n; ++b) {
      auto tr = catalog::cycle_perm(n, {a, b});
      if (gl.contains(tr)) continue;
      Tuple I = lambda, J = lambda;
      std::swap(J[a], J[b]);
      auto w = detail::checked_witness(G, I, J);
      if (!w) throw std::logic_error("beautiful subset pair is not a witness");
      Certificate c = detail::witness_certificate(std::move(*w));
      c.details = {{"induced_order", sl.order().str()}, {"size", std::to_string(n)}};
      return detail::not_binary(name, std::move(c), "beautiful subset");
    }
  throw std::logic_error("G^Lambda contains every transposition");
}

// ---- Strongly non-binary certificates ----

inline TestOutcome verify_snb_certificate(const PermutationGroup& G, const Permutation& tau,
                                          const std::vector<Permutation>& etas) {
  const std::string name = "snb_certificate";
  const std::size_t t = G.degree();
  if (tau.degree() != t) fail(ErrorCode::kDegreeMismatch);
  for (const auto& e : etas)
    if (e.degree() != t) fail(ErrorCode::kDegreeMismatch);
  if (G.contains(tau)) fail(ErrorCode::kConditionFailed, "tau lies in G");
  std::vector<char> fixed(t, 0);
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const auto& e = etas[i];
    for (Point x = 0; x < t; ++x) {
      if (tau[x] != x && e[x] != x)
        fail(ErrorCode::kConditionFailed, "supports of tau and eta_" + std::to_string(i + 1) + " overlap");
      if (e[x] == x) fixed[x] = 1;
    }
    if (!G.contains(tau * e)) fail(ErrorCode::kConditionFailed, "tau*eta_" + std::to_string(i + 1) + " is not in G");
  }
  for (Point x = 0; x < t; ++x)
    if (!fixed[x]) fail(ErrorCode::kConditionFailed, "point " + std::to_string(x + 1) + " is fixed by no eta");
  Tuple I(t);
  std::iota(I.begin(), I.end(), Point{0});
  auto w = detail::checked_witness(G, I, tau.apply(I));
  if (!w) throw std::logic_error("certificate hypotheses hold but the pair is not a witness");
  return detail::not_binary(name, detail::witness_certificate(std::move(*w)), "strongly non-binary");
}

// ---- Diagonal patch: (1,a,b,ab) and (1,a,b,ba) ----

struct DiagonalPatch {
  TestOutcome outcome;
  PermutationGroup group;              // action on the element set of T
  std::vector<Permutation> elements;   // point i is elements[i]
};

inline DiagonalPatch diagonal_patch_witness(const PermutationGroup& T, bool with_inversion = false) {
  const std::string name = "diagonal_patch";
  auto d = catalog::diagonal_type_on_T(T, "T", with_inversion);
  const auto& G = d.entry.group;
  const auto& el = d.elements;
  const std::size_t n = el.size();
  std::map<Permutation, Point> index;
  for (std::size_t i = 0; i < n; ++i) index[el[i]] = static_cast<Point>(i);
  auto conj_perm = [&](const Permutation& c) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = index.at(el[i].conjugate_by(c));
    return Permutation::from_images_unchecked(std::move(img));
  };
  bool any_noncommuting = false;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) {
      const auto &a = el[i], &b = el[j];
      if (a * b == b * a) continue;
      any_noncommuting = true;
      if (a.order() == 2 && b.order() == 2) continue;
      TuplePair w;
      w.I = {0, index.at(a), index.at(b), index.at(a * b)};
      w.J = {0, index.at(a), index.at(b), index.at(b * a)};
      w.completeness_level = 2;
      const Permutation id = Permutation::identity(n), ca = conj_perm(a), cb = conj_perm(b.inverse());
      w.transporters = {{{0, 1}, id}, {{0, 2}, id}, {{1, 2}, id}, {{0, 3}, ca}, {{1, 3}, ca}, {{2, 3}, cb}};
      if (!certificates_valid(G, w)) throw std::logic_error("conjugation certificates failed");
      if (orbit_equivalent(G, w.I, w.J)) {
        if (!with_inversion) throw std::logic_error("4-tuples equivalent under translations and Inn(T)");
        continue;
      }
      Certificate c = detail::witness_certificate(std::move(w));
      c.details = {{"a", format_permutation(a)}, {"b", format_permutation(b)}};
      return {detail::not_binary(name, std::move(c), "(1,a,b,ab) and (1,a,b,ba)"), G, el};
    }
  if (!any_noncommuting) fail(ErrorCode::kAbelianInput);
  if (with_inversion) fail(ErrorCode::kConditionFailed, "every admissible pair is equivalent once inversion is added");
  fail(ErrorCode::kNoValidPair);
}

// ---- Certificate re-validation ----

// Re-checks a NotBinary outcome using only subtuple_complete, orbit_equivalent and membership.
inline bool certificate_holds(const PermutationGroup& g, const TestOutcome& o) {
  if (o.verdict != Verdict::kNotBinary) return true;
  if (!o.certificate) return false;
  const auto& c = *o.certificate;
  if (c.witness) {
    const auto& w = *c.witness;
    const std::size_t k = static_cast<std::size_t>(std::max(2, w.completeness_level));
    if (w.I.size() != w.J.size() || w.I.size() <= k) return false;
    if (!certificates_valid(g, w)) return false;
    if (!subtuple_complete(g, w.I, w.J, k).complete) return false;
    if (orbit_equivalent(g, w.I, w.J)) return false;
  }
  if (c.kind == "closure_element") {
    if (!c.element || g.contains(*c.element)) return false;
    const std::size_t k = std::stoul(c.details.at("k"));
    auto colors = tuple_orbit_colors(g, k);
    ColoredStructure s(g.degree());
    s.add_layer(k, colors);
    if (!s.preserved_by(*c.element)) return false;
  }
  if (c.kind == "inequality") {
    const std::size_t l = std::stoul(c.details.at("ell"));
    auto r = r_ell_by_elements(g, l, Order(1) << 40);
    if (r[l] <= boost::multiprecision::pow(r[2], static_cast<unsigned>(l * (l - 1) / 2))) return false;
  }
  return c.witness || c.kind == "inequality" || c.kind == "closure_element";
}

// ---- Battery ----

struct BatteryOptions {
  std::vector<std::string> tests{"1", "2", "3", "4", "5", "6", "frobenius"};
  std::optional<long> prime{};  // Test 5; every prime dividing |G| when absent
  std::size_t trials = 100000;
  std::uint64_t seed = 0xC4E2;
  std::size_t ell_max = 5;
  bool run_all = false;  // keep going after the first NotBinary
  Caps caps{};
};

inline TestOutcome run_single_test(const PermutationGroup& g, const std::string& test, const BatteryOptions& opt) {
  try {
    if (test == "1") return test1_character_bound(g, {.ell_max = opt.ell_max});
    if (test == "2") return test2_strongly_non_k_ary(g, 2);
    if (test == "3") return test3_triples(g);
    if (test == "4") return test4_suborbits(g, opt.caps);
    if (test == "5") {
      std::vector<long> primes;
      if (opt.prime) {
        primes.push_back(*opt.prime);
      } else {
        for (long p = 2; p <= static_cast<long>(g.degree()); ++p)
          if (catalog::is_prime(p) && g.order() % p == 0) primes.push_back(p);
      }
      TestOutcome last = detail::inconclusive("test5", "no prime divides |G|");
      for (long p : primes) {
        last = test5_special_primes(g, p, {.seed = opt.seed});
        if (last.verdict == Verdict::kNotBinary) return last;
      }
      return last;
    }
    if (test == "6") return test6_trivial_two_point(g, {.trials = opt.trials, .seed = opt.seed});
    if (test == "frobenius") return frobenius_test(g);
  } catch (const Error& e) {
    std::string name = test == "frobenius" ? test : "test" + test;
    return detail::inconclusive(name, std::string("not applicable: ") + e.what());
  }
  fail(ErrorCode::kBadParameter, "unknown test " + test);
}

inline std::vector<TestOutcome> run_battery(const PermutationGroup& g, const BatteryOptions& opt = {}) {
  std::vector<TestOutcome> out;
  for (const auto& t : opt.tests) {
    out.push_back(run_single_test(g, t, opt));
    if (out.back().verdict == Verdict::kNotBinary && !opt.run_all) break;
  }
  return out;
}

}  // namespace relc
