#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "relc/group.hpp"
#include "relc/tuple_tree.hpp"

namespace relc {

struct TuplePair {
  Tuple I, J;
  int completeness_level = 0;
  std::map<std::vector<std::size_t>, Permutation> transporters;  // index subset -> certificate
};

// Transporter results keyed by (index subset, I|S, J|S).
class TransporterMemo {
 public:
  std::optional<Permutation> get(const PermutationGroup& g, const std::vector<std::size_t>& subset, const Tuple& a,
                                 const Tuple& b) {
    Key key{subset, a, b};
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    auto r = transporter(g, a, b);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  using Key = std::tuple<std::vector<std::size_t>, Tuple, Tuple>;
  std::mutex mu_;
  std::map<Key, std::optional<Permutation>> memo_;
};

struct CompletenessResult {
  bool complete = false;
  TuplePair pair;
  std::vector<std::size_t> failing_subset;
};

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) return f(cur);
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      if (!rec(i + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  rec(0);
}

inline Tuple restrict(const Tuple& t, const std::vector<std::size_t>& subset) {
  Tuple out;
  for (std::size_t i : subset) out.push_back(t[i]);
  return out;
}

// I is k-subtuple complete to J: every k-subtuple of I maps to the matching subtuple of J.
inline CompletenessResult subtuple_complete(const PermutationGroup& g, const Tuple& I, const Tuple& J, std::size_t k,
                                            TransporterMemo* memo = nullptr) {
  if (I.size() != J.size()) fail(ErrorCode::kLengthMismatch);
  if (k < 1 || k > I.size()) fail(ErrorCode::kBadParameter, "need 1 <= k <= |I|");
  TransporterMemo local;
  TransporterMemo& m = memo ? *memo : local;
  CompletenessResult r;
  r.pair.I = I;
  r.pair.J = J;
  r.complete = true;
  for_each_subset(I.size(), k, [&](const std::vector<std::size_t>& s) {
    auto t = m.get(g, s, restrict(I, s), restrict(J, s));
    if (!t) {
      r.complete = false;
      r.failing_subset = s;
      return false;
    }
    r.pair.transporters.emplace(s, *t);
    return true;
  });
  if (r.complete) r.pair.completeness_level = static_cast<int>(k);
  return r;
}

inline bool orbit_equivalent(const PermutationGroup& g, const Tuple& I, const Tuple& J) {
  if (I.size() != J.size()) fail(ErrorCode::kLengthMismatch);
  return transporter(g, I, J).has_value();
}

// Checks every recorded certificate of a pair.
inline bool certificates_valid(const PermutationGroup& g, const TuplePair& p) {
  for (const auto& [s, t] : p.transporters) {
    if (!g.contains(t)) return false;
    if (t.apply(restrict(p.I, s)) != restrict(p.J, s)) return false;
  }
  return true;
}

struct Caps {
  std::size_t max_degree = 120;
  Order max_order = 10000000;
  bool force = false;
};

inline void check_caps(const PermutationGroup& g, const Caps& caps) {
  if (caps.force) return;
  if (g.degree() > caps.max_degree) fail(ErrorCode::kDegreeTooLarge, "degree " + std::to_string(g.degree()));
  if (g.order() > caps.max_order) fail(ErrorCode::kDegreeTooLarge, "order " + g.order().str());
}

struct RcResult {
  int rc = 2;
  std::optional<TuplePair> witness;
  int height = 0;
  Tuple height_witness;
  std::size_t tree_nodes = 0;
};

namespace detail {

class IndependenceSearch {
 public:
  explicit IndependenceSearch(const PermutationGroup& g) : tree_(g) {}

  TupleTree& tree() { return tree_; }

  // Set-independence of the prefix; every proper subset is assumed independent already.
  bool independent(TupleTree::Node* n, std::vector<std::pair<TupleTree::Node*, Permutation>>* drops = nullptr) {
    const std::size_t k = n->prefix.size();
    if (drops) drops->clear();
    if (k <= 1) {
      if (n->independent < 0) n->independent = n->parent ? (n->order < n->parent->order) : 1;
      return n->independent == 1;
    }
    if (n->independent == 0) return false;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      Tuple t;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) t.push_back(n->prefix[j]);
      auto cn = tree_.canonicalize(t);
      if (cn.first->order == n->order) {
        ok = false;
        break;
      }
      if (drops) drops->push_back(std::move(cn));
    }
    n->independent = ok ? 1 : 0;
    return ok;
  }

 private:
  TupleTree tree_;
};

}  // namespace detail

// Exact RC by search over canonical independent sets X and points gamma, delta with
// (X, gamma) |X|-subtuple complete to (X, delta) but not equivalent.
inline RcResult relational_complexity(const PermutationGroup& g, const Caps& caps = {}) {
  check_caps(g, caps);
  RcResult res;
  if (g.is_trivial() || g.degree() < 2) return res;
  detail::IndependenceSearch search(g);
  TupleTree& tree = search.tree();
  std::size_t best = 1;  // largest |X| with a witness so far
  std::optional<std::pair<Tuple, std::pair<Point, Point>>> found;
  std::vector<std::pair<TupleTree::Node*, Permutation>> drops;

  std::function<void(TupleTree::Node*)> dfs = [&](TupleTree::Node* n) {
    const std::size_t k = n->prefix.size();
    if (k >= 1) {
      if (!search.independent(n, &drops)) return;
      if (static_cast<int>(k) > res.height) {
        res.height = static_cast<int>(k);
        res.height_witness = n->prefix;
      }
    }
    if (k >= 2 && k > best) {
      const auto& here = n->orbits;
      const auto& up = n->parent->orbits;
      std::vector<char> in_prefix(g.degree(), 0);
      for (Point x : n->prefix) in_prefix[x] = 1;
      bool hit = false;
      for (Point gamma : here.reps()) {
        if (in_prefix[gamma]) continue;
        for (Point delta = 0; delta < g.degree() && !hit; ++delta) {
          if (!up.same_orbit(delta, gamma) || here.same_orbit(delta, gamma)) continue;
          bool ok = true;
          for (const auto& [dn, dg] : drops)
            if (!dn->orbits.same_orbit(dg[delta], dg[gamma])) {
              ok = false;
              break;
            }
          if (ok) {
            hit = true;
            found = {n->prefix, {gamma, delta}};
          }
        }
        if (hit) break;
      }
      if (hit) best = k;
    }
    // copy: children may be created while iterating
    std::vector<Point> reps = n->orbits.nontrivial_reps();
    for (Point r : reps) {
      if (std::find(n->prefix.begin(), n->prefix.end(), r) != n->prefix.end()) continue;
      dfs(tree.child(n, r));
    }
  };
  dfs(tree.root());
  res.tree_nodes = tree.node_count();
  if (found) {
    Tuple I = found->first, J = found->first;
    I.push_back(found->second.first);
    J.push_back(found->second.second);
    auto c = subtuple_complete(g, I, J, I.size() - 1);
    res.rc = static_cast<int>(I.size());
    res.witness = c.pair;
  }
  return res;
}

inline bool is_binary(const PermutationGroup& g, const Caps& caps = {}) { return relational_complexity(g, caps).rc == 2; }

struct StatisticWithWitness {
  int value = 0;
  Tuple witness;
};

// Largest independent set.
inline StatisticWithWitness height(const PermutationGroup& g, const Caps& caps = {}) {
  check_caps(g, caps);
  StatisticWithWitness r;
  if (g.is_trivial()) return r;
  detail::IndependenceSearch search(g);
  std::function<void(TupleTree::Node*)> dfs = [&](TupleTree::Node* n) {
    if (!n->prefix.empty()) {
      if (!search.independent(n)) return;
      if (static_cast<int>(n->prefix.size()) > r.value) {
        r.value = static_cast<int>(n->prefix.size());
        r.witness = n->prefix;
      }
    }
    std::vector<Point> reps = n->orbits.nontrivial_reps();
    for (Point p : reps) dfs(search.tree().child(n, p));
  };
  dfs(search.tree().root());
  return r;
}

// Largest minimal base: an independent set with trivial pointwise stabilizer.
inline StatisticWithWitness max_minimal_base(const PermutationGroup& g, const Caps& caps = {}) {
  check_caps(g, caps);
  StatisticWithWitness r;
  if (g.is_trivial()) return r;
  detail::IndependenceSearch search(g);
  std::function<void(TupleTree::Node*)> dfs = [&](TupleTree::Node* n) {
    if (!n->prefix.empty()) {
      if (!search.independent(n)) return;
      if (n->order == 1 && static_cast<int>(n->prefix.size()) > r.value) {
        r.value = static_cast<int>(n->prefix.size());
        r.witness = n->prefix;
      }
    }
    std::vector<Point> reps = n->orbits.nontrivial_reps();
    for (Point p : reps) dfs(search.tree().child(n, p));
  };
  dfs(search.tree().root());
  return r;
}

// Longest irredundant base: longest chain of strictly shrinking pointwise stabilizers.
inline StatisticWithWitness max_irredundant_base(const PermutationGroup& g, const Caps& caps = {}) {
  check_caps(g, caps);
  StatisticWithWitness r;
  if (g.is_trivial()) return r;
  TupleTree tree(g);
  std::function<void(TupleTree::Node*)> dfs = [&](TupleTree::Node* n) {
    if (static_cast<int>(n->prefix.size()) > r.value) {
      r.value = static_cast<int>(n->prefix.size());
      r.witness = n->prefix;
    }
    std::vector<Point> reps = n->orbits.nontrivial_reps();
    for (Point p : reps) {
      dfs(tree.child(n, p));
      n->children.erase(p);
    }
  };
  dfs(tree.root());
  return r;
}

// Smallest base, by iterative deepening over canonical irredundant tuples.
inline StatisticWithWitness min_base(const PermutationGroup& g, const Caps& caps = {}) {
  check_caps(g, caps);
  StatisticWithWitness r;
  if (g.is_trivial()) return r;
  TupleTree tree(g);
  std::vector<TupleTree::Node*> level{tree.root()};
  while (!level.empty()) {
    std::vector<TupleTree::Node*> next;
    for (auto* n : level) {
      std::vector<Point> reps = n->orbits.nontrivial_reps();
      for (Point p : reps) {
        auto* c = tree.child(n, p);
        if (c->order == 1) {
          r.value = static_cast<int>(c->prefix.size());
          r.witness = c->prefix;
          return r;
        }
        next.push_back(c);
      }
    }
    level = std::move(next);
  }
  return r;
}

struct StatisticsReport {
  Order order;
  std::size_t degree = 0;
  bool transitive = false;
  std::optional<bool> primitive;
  std::optional<RcResult> rc;
  std::optional<StatisticWithWitness> b, B, H, I;
  std::vector<std::string> skipped;
};

inline StatisticsReport statistics(const PermutationGroup& g, const Caps& caps = {}) {
  StatisticsReport r;
  r.order = g.order();
  r.degree = g.degree();
  r.transitive = is_transitive(g);
  if (r.transitive) r.primitive = is_primitive(g).primitive;
  auto guarded = [&](const char* name, auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegreeTooLarge) throw;
      r.skipped.push_back(name);
    }
  };
  guarded("rc", [&] { r.rc = relational_complexity(g, caps); });
  guarded("b", [&] { r.b = min_base(g, caps); });
  guarded("B", [&] { r.B = max_minimal_base(g, caps); });
  guarded("H", [&] {
    if (r.rc) r.H = StatisticWithWitness{r.rc->height, r.rc->height_witness};
    else r.H = height(g, caps);
  });
  guarded("I", [&] { r.I = max_irredundant_base(g, caps); });
  return r;
}

// Lifts a witness for M acting on suborbit points (indices into `points`) to G by prepending alpha.
inline TuplePair lift_suborbit_witness(const TuplePair& w, const std::vector<Point>& points, Point alpha) {
  TuplePair out;
  out.I.push_back(alpha);
  out.J.push_back(alpha);
  for (Point x : w.I) out.I.push_back(points[x]);
  for (Point x : w.J) out.J.push_back(points[x]);
  return out;
}

struct SuborbitBound {
  int rc = 2;
  std::vector<Point> suborbit;
  std::optional<TuplePair> witness;  // for the suborbit action, in suborbit indices
};

inline SuborbitBound suborbit_rc_lower_bound(const PermutationGroup& g, const Caps& caps = {}) {
  if (!is_transitive(g)) fail(ErrorCode::kNotTransitive);
  SuborbitBound best;
  auto m = pointwise_stabilizer(g, {0});
  for (const auto& orb : orbits(m)) {
    if (orb.size() < 2) continue;
    auto ia = induced_action(m, orb);
    auto r = relational_complexity(ia.image, caps);
    if (r.rc > best.rc) {
      best.rc = r.rc;
      best.suborbit = orb;
      best.witness = r.witness;
    }
  }
  return best;
}

}  // namespace relc
