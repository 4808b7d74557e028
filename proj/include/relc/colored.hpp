#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "relc/group.hpp"

namespace relc {

inline std::size_t checked_power(std::size_t t, std::size_t a, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < a; ++i) {
    if (t != 0 && r > limit / t) fail(ErrorCode::kTooLarge, std::to_string(t) + "^" + std::to_string(a));
    r *= t;
  }
  return r;
}

// Complete colorings of Omega^a for a few arities a. A tuple (x_1..x_a) has index
// x_1 t^(a-1) + ... + x_a, so index order is lexicographic order.
class ColoredStructure {
 public:
  static constexpr std::size_t kMaxCells = std::size_t{1} << 26;

  struct Layer {
    std::size_t arity = 0;
    std::vector<std::uint32_t> colors;
  };

  explicit ColoredStructure(std::size_t vertices) : t_(vertices) {
    if (vertices == 0) fail(ErrorCode::kBadParameter, "no vertices");
  }

  std::size_t vertices() const { return t_; }
  const std::vector<Layer>& layers() const { return layers_; }

  void add_layer(std::size_t arity, std::vector<std::uint32_t> colors) {
    if (arity < 1) fail(ErrorCode::kBadParameter, "arity");
    if (colors.size() != checked_power(t_, arity, kMaxCells)) fail(ErrorCode::kBadParameter, "color array size");
    layers_.push_back({arity, std::move(colors)});
  }

  std::size_t index(const Tuple& x) const {
    std::size_t i = 0;
    for (Point p : x) i = i * t_ + p;
    return i;
  }

  Tuple tuple(std::size_t index, std::size_t arity) const {
    Tuple x(arity);
    for (std::size_t i = arity; i-- > 0;) {
      x[i] = static_cast<Point>(index % t_);
      index /= t_;
    }
    return x;
  }

  bool preserved_by(const Permutation& g) const {
    for (const auto& l : layers_) {
      for (std::size_t i = 0; i < l.colors.size(); ++i) {
        Tuple x = tuple(i, l.arity);
        for (auto& p : x) p = g[p];
        if (l.colors[index(x)] != l.colors[i]) return false;
      }
    }
    return true;
  }

 private:
  std::size_t t_;
  std::vector<Layer> layers_;
};

// Orbits of G on Omega^a, numbered by lexicographically least member.
inline std::vector<std::uint32_t> tuple_orbit_colors(const PermutationGroup& g, std::size_t arity) {
  const std::size_t t = g.degree();
  const std::size_t n = checked_power(t, arity, ColoredStructure::kMaxCells);
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<Point> digits(arity);
  for (const auto& s : g.generators()) {
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = 0;
      for (Point d : digits) j = j * t + s[d];
      std::uint32_t a = find(static_cast<std::uint32_t>(i)), b = find(static_cast<std::uint32_t>(j));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
      for (std::size_t k = arity; k-- > 0;) {
        if (++digits[k] < t) break;
        digits[k] = 0;
      }
    }
  }
  std::vector<std::uint32_t> color(n);
  std::vector<std::uint32_t> id(n, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = find(static_cast<std::uint32_t>(i));
    if (id[r] == UINT32_MAX) id[r] = next++;
    color[i] = id[r];
  }
  return color;
}

// Backtracking search for color-preserving bijections A -> B.
class IsomorphismSearch {
 public:
  IsomorphismSearch(const ColoredStructure& a, const ColoredStructure& b) : a_(a), b_(b), t_(a.vertices()) {
    shapes_match_ = a.vertices() == b.vertices() && a.layers().size() == b.layers().size();
    for (std::size_t l = 0; shapes_match_ && l < a.layers().size(); ++l)
      shapes_match_ = a.layers()[l].arity == b.layers()[l].arity;
    if (shapes_match_) refine();
  }

  // Vertex cells shared by both structures; equal cells are necessary for mapping.
  const std::vector<std::uint32_t>& cells_a() const { return cell_a_; }

  // Streams every isomorphism extending the forced pairs; f returns false to stop.
  // Returns false if stopped early.
  bool run(const std::vector<std::pair<Point, Point>>& forced, const std::function<bool(const Permutation&)>& f) {
    if (!shapes_match_) return true;
    map_.assign(t_, kNone);
    inv_.assign(t_, kNone);
    assigned_.clear();
    for (auto [x, y] : forced) {
      if (x >= t_ || y >= t_) fail(ErrorCode::kPointOutOfRange);
      if (map_[x] != kNone || inv_[y] != kNone || cell_a_[x] != cell_b_[y]) return true;
      map_[x] = y;
      inv_[y] = x;
      assigned_.push_back(x);
      if (!consistent(x)) return true;
    }
    order_ = assigned_;
    std::vector<std::size_t> cell_size(next_cell_, 0);
    for (auto c : cell_a_) ++cell_size[c];
    std::vector<Point> rest;
    for (Point v = 0; v < t_; ++v)
      if (map_[v] == kNone) rest.push_back(v);
    std::stable_sort(rest.begin(), rest.end(),
                     [&](Point x, Point y) { return cell_size[cell_a_[x]] < cell_size[cell_a_[y]]; });
    order_.insert(order_.end(), rest.begin(), rest.end());
    return extend(forced.size(), f);
  }

  std::optional<Permutation> first(const std::vector<std::pair<Point, Point>>& forced) {
    std::optional<Permutation> out;
    run(forced, [&](const Permutation& p) {
      out = p;
      return false;
    });
    return out;
  }

 private:
  static constexpr Point kNone = UINT32_MAX;

  // Colour refinement: layer-wise position histograms, then iterated arity-2 neighbourhoods.
  void refine() {
    std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
    auto initial = [&](const ColoredStructure& s) {
      std::vector<std::vector<std::uint64_t>> sig(t_);
      for (const auto& l : s.layers()) {
        std::vector<std::map<std::uint32_t, std::uint32_t>> hist(t_ * l.arity);
        for (std::size_t i = 0; i < l.colors.size(); ++i) {
          std::size_t x = i;
          for (std::size_t k = l.arity; k-- > 0;) {
            ++hist[(x % t_) * l.arity + k][l.colors[i]];
            x /= t_;
          }
        }
        for (Point v = 0; v < t_; ++v) {
          std::size_t diag = 0;
          for (std::size_t k = 0; k < l.arity; ++k) diag = diag * t_ + v;
          sig[v].push_back(l.colors[diag]);
          for (std::size_t k = 0; k < l.arity; ++k) {
            sig[v].push_back(UINT64_MAX);
            for (auto [c, n] : hist[v * l.arity + k]) sig[v].push_back((std::uint64_t{c} << 32) | n);
          }
        }
      }
      return sig;
    };
    auto sa = initial(a_), sb = initial(b_);
    auto number = [&](std::vector<std::vector<std::uint64_t>>& sig, std::vector<std::uint32_t>& cell) {
      cell.resize(t_);
      for (Point v = 0; v < t_; ++v) cell[v] = ids.emplace(std::move(sig[v]), ids.size()).first->second;
    };
    number(sa, cell_a_);
    number(sb, cell_b_);
    const ColoredStructure::Layer* la = nullptr;
    const ColoredStructure::Layer* lb = nullptr;
    for (std::size_t l = 0; l < a_.layers().size(); ++l)
      if (a_.layers()[l].arity == 2) {
        la = &a_.layers()[l];
        lb = &b_.layers()[l];
        break;
      }
    std::size_t classes = ids.size();
    while (la) {
      ids.clear();
      auto round = [&](const ColoredStructure::Layer& l, const std::vector<std::uint32_t>& cell) {
        std::vector<std::vector<std::uint64_t>> sig(t_);
        for (Point v = 0; v < t_; ++v) {
          std::vector<std::uint64_t> nb;
          for (Point x = 0; x < t_; ++x)
            nb.push_back((std::uint64_t{l.colors[v * t_ + x]} << 42) | (std::uint64_t{l.colors[x * t_ + v]} << 21) |
                         cell[x]);
          std::sort(nb.begin(), nb.end());
          sig[v].push_back(cell[v]);
          sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        return sig;
      };
      auto ra = round(*la, cell_a_), rb = round(*lb, cell_b_);
      number(ra, cell_a_);
      number(rb, cell_b_);
      if (ids.size() == classes) break;
      classes = ids.size();
    }
    next_cell_ = static_cast<std::uint32_t>(ids.size());
    auto ca = cell_a_, cb = cell_b_;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) shapes_match_ = false;
  }

  // Every tuple over assigned vertices that uses v keeps its colour.
  bool consistent(Point v) {
    const std::size_t s = assigned_.size();
    std::size_t vpos = s;
    for (std::size_t i = 0; i < s; ++i)
      if (assigned_[i] == v) vpos = i;
    for (std::size_t l = 0; l < a_.layers().size(); ++l) {
      const auto& ca = a_.layers()[l].colors;
      const auto& cb = b_.layers()[l].colors;
      const std::size_t ar = a_.layers()[l].arity;
      digits_.assign(ar, 0);
      while (true) {
        bool uses = false;
        std::size_t ia = 0, ib = 0;
        for (std::size_t d : digits_) {
          uses |= d == vpos;
          ia = ia * t_ + assigned_[d];
          ib = ib * t_ + map_[assigned_[d]];
        }
        if (uses && ca[ia] != cb[ib]) return false;
        std::size_t k = ar;
        while (k > 0) {
          if (++digits_[k - 1] < s) break;
          digits_[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    return true;
  }

  bool extend(std::size_t depth, const std::function<bool(const Permutation&)>& f) {
    if (depth == t_) {
      std::vector<Point> img(map_.begin(), map_.end());
      return f(Permutation::from_images_unchecked(std::move(img)));
    }
    Point v = order_[depth];
    for (Point w = 0; w < t_; ++w) {
      if (inv_[w] != kNone || cell_b_[w] != cell_a_[v]) continue;
      map_[v] = w;
      inv_[w] = v;
      assigned_.push_back(v);
      bool ok = consistent(v);
      if (ok && !extend(depth + 1, f)) return false;
      assigned_.pop_back();
      map_[v] = kNone;
      inv_[w] = kNone;
    }
    return true;
  }

  const ColoredStructure& a_;
  const ColoredStructure& b_;
  std::size_t t_;
  bool shapes_match_ = false;
  std::vector<std::uint32_t> cell_a_, cell_b_;
  std::uint32_t next_cell_ = 0;
  std::vector<Point> map_, inv_, assigned_, order_;
  std::vector<std::size_t> digits_;
};

// Automorphism group by levels along the base 0..t-1: at level i every candidate image of i
// outside the known orbit of the stabilizer of 0..i-1 gets one search. `known` must consist of
// automorphisms; they seed the group.
inline PermutationGroup automorphism_group(const ColoredStructure& s, const std::vector<Permutation>& known = {}) {
  const std::size_t t = s.vertices();
  std::vector<Permutation> gens;
  for (const auto& g : known)
    if (!g.is_identity()) gens.push_back(g);
  IsomorphismSearch search(s, s);
  Tuple base(t);
  std::iota(base.begin(), base.end(), Point{0});
  auto chain = StabilizerChain::build(t, gens, base);
  const auto& cells = search.cells_a();
  for (std::size_t i = t; i-- > 0;) {
    for (Point c = static_cast<Point>(i + 1); c < t; ++c) {
      if (cells[c] != cells[i] || chain.in_orbit(i, c)) continue;
      std::vector<std::pair<Point, Point>> forced;
      for (Point j = 0; j < i; ++j) forced.emplace_back(j, j);
      forced.emplace_back(static_cast<Point>(i), c);
      if (auto g = search.first(forced)) {
        gens.push_back(std::move(*g));
        chain = StabilizerChain::build(t, gens, base);
      }
    }
  }
  return PermutationGroup(t, std::move(gens));
}

}  // namespace relc
