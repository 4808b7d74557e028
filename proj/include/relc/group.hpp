#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "relc/chain.hpp"

namespace relc {

inline std::uint64_t saturate_u64(const Order& o) {
  if (o > Order(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(o);
}

class PermutationGroup {
 public:
  PermutationGroup() : PermutationGroup(1, {}) {}
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), lazy_(std::make_shared<Lazy>()) {
    if (degree == 0) fail(ErrorCode::kBadParameter, "degree must be at least 1");
    if (degree > kMaxDegree) fail(ErrorCode::kDegreeTooLarge, std::to_string(degree));
    for (auto& g : generators) {
      if (g.degree() != degree) fail(ErrorCode::kDegreeMismatch);
      if (g.is_identity()) continue;
      if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
    }
  }

  static PermutationGroup trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  bool is_trivial() const { return gens_.empty(); }

  const StabilizerChain& chain() const {
    std::call_once(lazy_->once, [&] {
      if (lazy_->preset) return;
      lazy_->chain = StabilizerChain::build(degree_, gens_);
    });
    return lazy_->chain;
  }

  // Installs a chain known to be valid for this group (e.g. loaded from cache).
  void adopt_chain(StabilizerChain c) const {
    std::call_once(lazy_->once, [&] {
      lazy_->chain = std::move(c);
      lazy_->preset = true;
    });
  }

  StabilizerChain chain_with_base(const Tuple& prefix) const {
    return StabilizerChain::build(degree_, gens_, prefix);
  }

  Order order() const { return chain().order(); }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) fail(ErrorCode::kDegreeMismatch);
    return chain().contains(p);
  }

 private:
  struct Lazy {
    std::once_flag once;
    StabilizerChain chain;
    bool preset = false;
  };
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<Lazy> lazy_;
};

inline void check_point(const PermutationGroup& g, Point p) {
  if (p >= g.degree()) fail(ErrorCode::kPointOutOfRange, std::to_string(p));
}

inline bool same_group(const PermutationGroup& a, const PermutationGroup& b) {
  if (a.degree() != b.degree()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

inline bool is_subgroup(const PermutationGroup& sub, const PermutationGroup& g) {
  if (sub.degree() != g.degree()) return false;
  for (const auto& s : sub.generators())
    if (!g.contains(s)) return false;
  return true;
}

// Orbit of p in breadth-first insertion order.
inline std::vector<Point> orbit(const PermutationGroup& g, Point p) {
  check_point(g, p);
  std::vector<Point> out{p};
  std::vector<char> seen(g.degree(), 0);
  seen[p] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : g.generators()) {
      Point y = s[out[i]];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

// Orbit partition; each orbit sorted, orbits ordered by least element.
inline std::vector<std::vector<Point>> orbits(const PermutationGroup& g) {
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(g.degree(), 0);
  for (Point p = 0; p < g.degree(); ++p) {
    if (seen[p]) continue;
    auto o = orbit(g, p);
    for (Point x : o) seen[x] = 1;
    std::sort(o.begin(), o.end());
    out.push_back(std::move(o));
  }
  return out;
}

inline bool is_transitive(const PermutationGroup& g) { return orbit(g, 0).size() == g.degree(); }

inline std::vector<Permutation> elements(const PermutationGroup& g) {
  std::vector<Permutation> out;
  g.chain().for_each_element([&](const Permutation& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

inline PermutationGroup pointwise_stabilizer(const PermutationGroup& g, const Tuple& points) {
  for (Point p : points) check_point(g, p);
  if (g.is_trivial()) return g;
  auto c = g.chain_with_base(points);
  std::set<Point> distinct(points.begin(), points.end());
  return PermutationGroup(g.degree(), c.stabilizer_generators(distinct.size()));
}

// Some g with I^g = J, determined by the chain rebased on the distinct entries of I.
inline std::optional<Permutation> transporter(const PermutationGroup& g, const Tuple& from, const Tuple& to) {
  if (from.size() != to.size()) fail(ErrorCode::kLengthMismatch);
  for (Point p : from) check_point(g, p);
  for (Point p : to) check_point(g, p);
  Tuple base, target;
  std::vector<std::int64_t> fwd(g.degree(), -1), bwd(g.degree(), -1);
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (fwd[from[i]] == -1 && bwd[to[i]] == -1) {
      fwd[from[i]] = to[i];
      bwd[to[i]] = from[i];
      base.push_back(from[i]);
      target.push_back(to[i]);
    } else if (fwd[from[i]] != static_cast<std::int64_t>(to[i]) || bwd[to[i]] != static_cast<std::int64_t>(from[i])) {
      return std::nullopt;
    }
  }
  if (base.empty()) return Permutation::identity(g.degree());
  if (g.is_trivial()) {
    for (std::size_t i = 0; i < base.size(); ++i)
      if (base[i] != target[i]) return std::nullopt;
    return Permutation::identity(g.degree());
  }
  auto c = g.chain_with_base(base);
  Permutation w = Permutation::identity(g.degree());
  Permutation w_inv = w;
  for (std::size_t j = 0; j < base.size(); ++j) {
    Point p = w_inv[target[j]];
    if (!c.in_orbit(j, p)) return std::nullopt;
    Permutation u = c.transversal(j, p);
    w = u * w;
    w_inv = w.inverse();
  }
  return w;
}

namespace detail {

// Depth-first subgroup search over images of the first `depth` base points.
// `admissible(level, base point, image)` prunes; `is_member(element)` decides leaves.
// `known` must generate a subgroup containing the pointwise stabilizer of those points.
template <class Admissible, class Member>
PermutationGroup subgroup_search(const PermutationGroup& g, const Tuple& base_prefix, std::size_t depth,
                                 Admissible&& admissible, Member&& is_member, std::vector<Permutation> known) {
  auto c = g.chain_with_base(base_prefix);
  const std::size_t k = std::min(depth, c.length());
  Tuple base = c.base();
  std::vector<Permutation> found = std::move(known);
  auto subgroup_chain = [&] { return StabilizerChain::build(g.degree(), found, base); };
  StabilizerChain h = subgroup_chain();
  std::vector<std::vector<Point>> sorted_orbit(k);
  for (std::size_t j = 0; j < k; ++j) {
    sorted_orbit[j] = c.level(j).orbit;
    std::sort(sorted_orbit[j].begin(), sorted_orbit[j].end());
  }
  auto transversal = [&](std::size_t j, Point p) { return c.transversal(j, p); };

  std::function<void(std::size_t, const Permutation&, bool)> rec = [&](std::size_t j, const Permutation& w,
                                                                       bool identity_path) {
    if (j == k) {
      if (h.contains(w)) return;
      if (is_member(w)) {
        found.push_back(w);
        h = subgroup_chain();
      }
      return;
    }
    std::vector<Point> explored;
    for (Point p : sorted_orbit[j]) {
      Point img = w[p];
      if (!admissible(j, base[j], img)) continue;
      if (identity_path && j < h.length()) {
        // images in the orbit of an explored image under the current subgroup's
        // stabilizer of the earlier base points give no new cosets
        bool covered = false;
        const auto& lvl = h.level(j);
        if (lvl.base == base[j]) {
          for (Point e : explored)
            if (lvl.edge[e] != -1 && lvl.edge[img] != -1) {
              covered = true;
              break;
            }
        }
        if (covered) continue;
      }
      Permutation u = transversal(j, p);
      rec(j + 1, u * w, identity_path && img == base[j]);
      explored.push_back(img);
    }
  };
  rec(0, Permutation::identity(g.degree()), true);
  return PermutationGroup(g.degree(), found);
}

}  // namespace detail

inline PermutationGroup setwise_stabilizer(const PermutationGroup& g, const std::vector<Point>& set) {
  std::vector<char> in(g.degree(), 0);
  for (Point p : set) {
    check_point(g, p);
    in[p] = 1;
  }
  bool invariant = true;
  for (const auto& s : g.generators()) {
    for (Point p : set)
      if (!in[s[p]]) {
        invariant = false;
        break;
      }
    if (!invariant) break;
  }
  if (invariant) return g;
  Tuple base(set.begin(), set.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  auto fixer = pointwise_stabilizer(g, base);
  return detail::subgroup_search(
      g, base, base.size(), [&](std::size_t, Point b, Point img) { return in[b] == in[img]; },
      [&](const Permutation& w) {
        for (Point p : base)
          if (!in[w[p]]) return false;
        return true;
      },
      fixer.generators());
}

struct InducedAction {
  PermutationGroup image;
  Order kernel_order;
  std::vector<Point> points;  // ascending; image acts on indices into this list
};

inline InducedAction induced_action(const PermutationGroup& g, std::vector<Point> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty()) fail(ErrorCode::kBadParameter, "empty set");
  PermutationGroup stab = setwise_stabilizer(g, set);
  std::vector<std::int64_t> index(g.degree(), -1);
  for (std::size_t i = 0; i < set.size(); ++i) index[set[i]] = static_cast<std::int64_t>(i);
  std::vector<Permutation> gens;
  for (const auto& s : stab.generators()) {
    std::vector<Point> img(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) img[i] = static_cast<Point>(index[s[set[i]]]);
    gens.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  PermutationGroup image(set.size(), std::move(gens));
  Order kernel = stab.order() / image.order();
  return {std::move(image), kernel, std::move(set)};
}

struct PrimitivityResult {
  bool primitive = true;
  std::vector<std::vector<Point>> blocks;  // nontrivial block system when not primitive
};

// Finest block system in which a and b share a block.
inline std::vector<std::vector<Point>> minimal_block_system(const PermutationGroup& g, Point a, Point b) {
  const std::size_t n = g.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  std::function<Point(Point)> find = [&](Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::pair<Point, Point>> queue;
  auto unite = [&](Point x, Point y) {
    Point rx = find(x), ry = find(y);
    if (rx == ry) return;
    if (rx > ry) std::swap(rx, ry);
    parent[ry] = rx;
    queue.emplace_back(x, y);
  };
  unite(a, b);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (const auto& s : g.generators()) unite(s[x], s[y]);
  }
  std::map<Point, std::vector<Point>> cls;
  for (Point x = 0; x < n; ++x) cls[find(x)].push_back(x);
  std::vector<std::vector<Point>> out;
  for (auto& [_, v] : cls) out.push_back(std::move(v));
  return out;
}

inline PrimitivityResult is_primitive(const PermutationGroup& g) {
  if (!is_transitive(g)) fail(ErrorCode::kNotTransitive);
  PrimitivityResult r;
  if (g.degree() <= 2) return r;
  auto stab = pointwise_stabilizer(g, {0});
  for (const auto& orb : orbits(stab)) {
    Point b = orb.front();
    if (b == 0) continue;
    auto blocks = minimal_block_system(g, 0, b);
    if (blocks.size() > 1) {
      r.primitive = false;
      r.blocks = std::move(blocks);
      return r;
    }
  }
  return r;
}

// x in G with x^-1 g x = h, by backtracking over base images constrained by the cycle structure.
inline std::optional<Permutation> element_conjugator(const PermutationGroup& grp, const Permutation& g,
                                                     const Permutation& h) {
  if (!grp.contains(g) || !grp.contains(h)) fail(ErrorCode::kNotInGroup);
  if (g == h) return Permutation::identity(grp.degree());
  {
    auto cycle_type = [](const Permutation& p) {
      std::vector<std::size_t> t;
      for (const auto& c : p.cycles()) t.push_back(c.size());
      std::sort(t.begin(), t.end());
      return t;
    };
    if (cycle_type(g) != cycle_type(h)) return std::nullopt;
  }
  const std::size_t n = grp.degree();
  const auto& c = grp.chain();
  const std::size_t k = c.length();
  std::vector<std::vector<Point>> sorted_orbit(k);
  for (std::size_t j = 0; j < k; ++j) {
    sorted_orbit[j] = c.level(j).orbit;
    std::sort(sorted_orbit[j].begin(), sorted_orbit[j].end());
  }
  std::vector<std::int64_t> f(n, -1), finv(n, -1);
  std::optional<Permutation> result;
  std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t j, const Permutation& w) {
    if (result) return;
    if (j == k) {
      if (w.inverse() * g * w == h) result = w;
      return;
    }
    const Point b = c.level(j).base;
    for (Point p : sorted_orbit[j]) {
      const Point img = w[p];
      if (f[b] != -1 && f[b] != static_cast<std::int64_t>(img)) continue;
      std::vector<Point> assigned;
      bool ok = true;
      if (f[b] == -1) {
        Point x = b, y = img;
        do {
          if (f[x] != -1 || finv[y] != -1) {
            ok = false;
            break;
          }
          f[x] = y;
          finv[y] = x;
          assigned.push_back(x);
          x = g[x];
          y = h[y];
        } while (x != b);
        if (ok && y != img) ok = false;
      }
      if (ok) rec(j + 1, c.transversal(j, p) * w);
      for (Point x : assigned) {
        finv[f[x]] = -1;
        f[x] = -1;
      }
      if (result) return;
    }
  };
  rec(0, Permutation::identity(n));
  return result;
}

inline bool is_normal_subgroup(const PermutationGroup& s, const PermutationGroup& g) {
  if (!is_subgroup(s, g)) return false;
  for (const auto& x : g.generators())
    for (const auto& y : s.generators())
      if (!s.contains(y.conjugate_by(x))) return false;
  return true;
}

}  // namespace relc
