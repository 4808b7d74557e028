#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "relc/permutation.hpp"

namespace relc {

using Order = boost::multiprecision::cpp_int;

// Base and strong generating set built by deterministic Schreier-Sims.
// Transversals are stored as Schreier vectors.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Permutation> inverse_gens;
    std::vector<Point> orbit;             // BFS order from base
    std::vector<std::int32_t> edge;       // -1: outside orbit, -2: base, else generator index
    std::vector<Point> parent;            // point reached from parent via gens[edge]
  };

  StabilizerChain() = default;

  static StabilizerChain build(std::size_t degree, const std::vector<Permutation>& generators,
                               const Tuple& base_prefix = {}) {
    StabilizerChain c;
    c.degree_ = degree;
    std::vector<Permutation> gens;
    for (const auto& g : generators) {
      if (g.degree() != degree) fail(ErrorCode::kDegreeMismatch);
      if (!g.is_identity()) gens.push_back(g);
    }
    Tuple base;
    std::vector<char> in_base(degree, 0);
    for (Point b : base_prefix) {
      if (b >= degree) fail(ErrorCode::kPointOutOfRange, std::to_string(b));
      if (in_base[b]) continue;
      in_base[b] = 1;
      base.push_back(b);
    }
    c.prefix_length_ = base.size();
    for (const auto& g : gens) {
      bool fixes_all = true;
      for (Point b : base)
        if (g[b] != b) {
          fixes_all = false;
          break;
        }
      if (fixes_all) {
        for (Point x = 0; x < degree; ++x)
          if (g[x] != x) {
            base.push_back(x);
            break;
          }
      }
    }
    c.levels_.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      c.levels_[i].base = base[i];
      for (const auto& g : gens) {
        bool fixes = true;
        for (std::size_t j = 0; j < i; ++j)
          if (g[base[j]] != base[j]) {
            fixes = false;
            break;
          }
        if (fixes) c.add_generator(i, g);
      }
      c.rebuild_orbit(i);
    }
    c.complete();
    return c;
  }

  // Rebuilds transversals from a known base and strong generating set.
  static StabilizerChain from_strong_generators(std::size_t degree, const Tuple& base,
                                                const std::vector<Permutation>& strong) {
    StabilizerChain c;
    c.degree_ = degree;
    c.prefix_length_ = base.size();
    c.levels_.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      c.levels_[i].base = base[i];
      for (const auto& g : strong) {
        bool fixes = true;
        for (std::size_t j = 0; j < i; ++j)
          if (g[base[j]] != base[j]) {
            fixes = false;
            break;
          }
        if (fixes && !g.is_identity()) c.add_generator(i, g);
      }
      c.rebuild_orbit(i);
    }
    return c;
  }

  std::size_t degree() const { return degree_; }
  std::size_t length() const { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_[i]; }
  const std::vector<Level>& levels() const { return levels_; }

  Tuple base() const {
    Tuple b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  Order order() const {
    Order o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  bool in_orbit(std::size_t i, Point p) const { return levels_[i].edge[p] != -1; }

  // u with base_i^u = p.
  Permutation transversal(std::size_t i, Point p) const {
    const Level& l = levels_[i];
    std::vector<std::int32_t> path;
    while (l.edge[p] >= 0) {
      path.push_back(l.edge[p]);
      p = l.parent[p];
    }
    Permutation u = Permutation::identity(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it) u *= l.gens[static_cast<std::size_t>(*it)];
    return u;
  }

  // g := g * u_p^-1 where p is in orbit i; done in place.
  void strip_in_place(std::size_t i, Permutation& g, Point p) const {
    const Level& l = levels_[i];
    while (l.edge[p] >= 0) {
      const auto e = static_cast<std::size_t>(l.edge[p]);
      g *= l.inverse_gens[e];
      p = l.parent[p];
    }
  }

  // Residue and level at which sifting stopped (length() when it passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      Point p = g[levels_[i].base];
      if (levels_[i].edge[p] == -1) return {std::move(g), i};
      strip_in_place(i, g, p);
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& g) const {
    if (g.degree() != degree_) fail(ErrorCode::kDegreeMismatch);
    auto [h, lvl] = sift(g);
    return lvl == levels_.size() && h.is_identity();
  }

  // Strong generators of the stabilizer of the first i base points.
  // Restores a chain level by level with the same generator order, so transversals match exactly.
  static StabilizerChain from_levels(std::size_t degree, std::size_t prefix_length,
                                     const std::vector<std::pair<Point, std::vector<Permutation>>>& levels) {
    StabilizerChain c;
    c.degree_ = degree;
    c.prefix_length_ = prefix_length;
    c.levels_.resize(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i].first >= degree) fail(ErrorCode::kPointOutOfRange, std::to_string(levels[i].first));
      c.levels_[i].base = levels[i].first;
      for (const auto& g : levels[i].second) {
        if (g.degree() != degree) fail(ErrorCode::kDegreeMismatch);
        c.add_generator(i, g);
      }
      c.rebuild_orbit(i);
    }
    return c;
  }

  std::size_t prefix_length() const { return prefix_length_; }

  std::vector<Permutation> stabilizer_generators(std::size_t i) const {
    if (i >= levels_.size()) return {};
    return levels_[i].gens;
  }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    for (const auto& l : levels_)
      for (const auto& g : l.gens)
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
  }

  Permutation random_element(std::mt19937_64& rng) const {
    Permutation g = Permutation::identity(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;) {
      const auto& orb = levels_[i].orbit;
      std::uniform_int_distribution<std::size_t> d(0, orb.size() - 1);
      g *= transversal(i, orb[d(rng)]);
    }
    return g;
  }

  // Visits every element once, as u_k ... u_1 over transversal choices; stops when f returns false.
  void for_each_element(const std::function<bool(const Permutation&)>& f) const {
    std::vector<std::vector<Permutation>> trans(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i)
      for (Point p : levels_[i].orbit) trans[i].push_back(transversal(i, p));
    bool stop = false;
    std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t i, const Permutation& left) {
      if (stop) return;
      if (i == 0) {
        if (!f(left)) stop = true;
        return;
      }
      for (const auto& u : trans[i - 1]) {
        rec(i - 1, left * u);
        if (stop) return;
      }
    };
    rec(levels_.size(), Permutation::identity(degree_));
  }

 private:
  void add_generator(std::size_t i, const Permutation& g) {
    levels_[i].gens.push_back(g);
    levels_[i].inverse_gens.push_back(g.inverse());
  }

  void rebuild_orbit(std::size_t i) {
    Level& l = levels_[i];
    l.edge.assign(degree_, -1);
    l.parent.assign(degree_, 0);
    l.orbit.clear();
    l.orbit.push_back(l.base);
    l.edge[l.base] = -2;
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      Point x = l.orbit[k];
      for (std::size_t s = 0; s < l.gens.size(); ++s) {
        Point y = l.gens[s][x];
        if (l.edge[y] == -1) {
          l.edge[y] = static_cast<std::int32_t>(s);
          l.parent[y] = x;
          l.orbit.push_back(y);
        }
      }
    }
  }

  // Appends orbit points reached through the newest generator, keeping existing tree edges so
  // previously sifted Schreier generators stay valid.
  void extend_orbit(std::size_t i) {
    Level& l = levels_[i];
    if (l.edge.empty()) {
      rebuild_orbit(i);
      return;
    }
    const std::size_t old = l.orbit.size();
    const std::size_t s_new = l.gens.size() - 1;
    for (std::size_t k = 0; k < old; ++k) {
      Point x = l.orbit[k];
      Point y = l.gens[s_new][x];
      if (l.edge[y] == -1) {
        l.edge[y] = static_cast<std::int32_t>(s_new);
        l.parent[y] = x;
        l.orbit.push_back(y);
      }
    }
    for (std::size_t k = old; k < l.orbit.size(); ++k) {
      Point x = l.orbit[k];
      for (std::size_t s = 0; s < l.gens.size(); ++s) {
        Point y = l.gens[s][x];
        if (l.edge[y] == -1) {
          l.edge[y] = static_cast<std::int32_t>(s);
          l.parent[y] = x;
          l.orbit.push_back(y);
        }
      }
    }
  }

  // Sims' test: every Schreier generator of every level sifts to the identity. done[i][k] counts
  // the generators already checked against orbit point k of level i.
  void complete() {
    if (levels_.empty()) return;
    std::vector<std::vector<std::size_t>> done(levels_.size());
    std::size_t i = levels_.size() - 1;
    while (true) {
      bool restarted = false;
      Level* l = &levels_[i];
      done[i].resize(l->orbit.size(), 0);
      for (std::size_t k = 0; k < l->orbit.size() && !restarted; ++k) {
        if (done[i].size() < l->orbit.size()) done[i].resize(l->orbit.size(), 0);
        if (done[i][k] >= l->gens.size()) continue;
        Point beta = l->orbit[k];
        Permutation u_beta = transversal(i, beta);
        for (std::size_t s = done[i][k]; s < l->gens.size(); ++s) {
          Permutation g = u_beta * l->gens[s];
          Point gamma = l->gens[s][beta];
          strip_in_place(i, g, gamma);
          if (g.is_identity()) {
            done[i][k] = s + 1;
            continue;
          }
          auto [h, j] = sift(std::move(g), i + 1);
          if (j == levels_.size()) {
            if (h.is_identity()) {
              done[i][k] = s + 1;
              continue;
            }
            Point moved = 0;
            while (h[moved] == moved) ++moved;
            levels_.push_back(Level{});
            levels_.back().base = moved;
            done.resize(levels_.size());
          }
          for (std::size_t m = i + 1; m <= j; ++m) {
            add_generator(m, h);
            extend_orbit(m);
          }
          i = j;
          restarted = true;
          break;
        }
      }
      if (restarted) continue;
      if (i == 0) break;
      --i;
    }
    // canonical BFS trees, so a chain restored from its level generators is identical
    for (std::size_t m = 0; m < levels_.size(); ++m) rebuild_orbit(m);
  }

  std::size_t degree_ = 0;
  std::size_t prefix_length_ = 0;
  std::vector<Level> levels_;
};

}  // namespace relc
