#pragma once

#include <map>
#include <memory>
#include <vector>

#include "relc/group.hpp"

namespace relc {

// Orbits of a group given by generators, each with a Schreier tree rooted at the orbit minimum.
class OrbitForest {
 public:
  OrbitForest() = default;
  OrbitForest(std::size_t degree, const std::vector<Permutation>& gens) : gens_(gens) {
    for (const auto& g : gens_) inv_.push_back(g.inverse());
    rep_.assign(degree, 0);
    edge_.assign(degree, -1);
    parent_.assign(degree, 0);
    std::vector<char> seen(degree, 0);
    std::vector<Point> queue;
    for (Point r = 0; r < degree; ++r) {
      if (seen[r]) continue;
      seen[r] = 1;
      rep_[r] = r;
      edge_[r] = -1;
      queue.assign(1, r);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        Point x = queue[i];
        for (std::size_t s = 0; s < gens_.size(); ++s) {
          Point y = gens_[s][x];
          if (!seen[y]) {
            seen[y] = 1;
            rep_[y] = r;
            edge_[y] = static_cast<std::int32_t>(s);
            parent_[y] = x;
            queue.push_back(y);
          }
        }
      }
      if (queue.size() > 1) nontrivial_.push_back(r);
      reps_.push_back(r);
    }
  }

  Point rep(Point x) const { return rep_[x]; }
  bool same_orbit(Point a, Point b) const { return rep_[a] == rep_[b]; }
  const std::vector<Point>& reps() const { return reps_; }
  const std::vector<Point>& nontrivial_reps() const { return nontrivial_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  // g := g * (element mapping x to its orbit minimum)
  void to_rep_in_place(Permutation& g, Point x) const {
    while (edge_[x] >= 0) {
      g *= inv_[static_cast<std::size_t>(edge_[x])];
      x = parent_[x];
    }
  }

 private:
  std::vector<Permutation> gens_, inv_;
  std::vector<Point> rep_;
  std::vector<std::int32_t> edge_;
  std::vector<Point> parent_;
  std::vector<Point> reps_, nontrivial_;
};

// Lazily grown trie of canonical tuples: t_1 is least in its G-orbit, t_{i+1} least in its
// orbit under the pointwise stabilizer of (t_1..t_i). Each node stores that stabilizer.
class TupleTree {
 public:
  struct Node {
    Tuple prefix;
    Order order;
    OrbitForest orbits;
    Node* parent = nullptr;
    std::map<Point, std::unique_ptr<Node>> children;
    int independent = -1;  // cached set-independence of prefix (-1 unknown)
  };

  explicit TupleTree(const PermutationGroup& g) : degree_(g.degree()) {
    root_ = std::make_unique<Node>();
    root_->order = g.order();
    root_->orbits = OrbitForest(degree_, g.generators());
    nodes_ = 1;
  }

  std::size_t degree() const { return degree_; }
  Node* root() { return root_.get(); }
  std::size_t node_count() const { return nodes_; }

  // Child for an orbit minimum r of node's stabilizer.
  Node* child(Node* n, Point r) {
    auto it = n->children.find(r);
    if (it != n->children.end()) return it->second.get();
    auto c = std::make_unique<Node>();
    c->prefix = n->prefix;
    c->prefix.push_back(r);
    c->parent = n;
    const auto& gens = n->orbits.generators();
    if (gens.empty()) {
      c->order = 1;
      c->orbits = OrbitForest(degree_, {});
    } else {
      auto chain = StabilizerChain::build(degree_, gens, {r});
      auto sg = chain.stabilizer_generators(1);
      c->order = n->order / chain.level(0).orbit.size();
      c->orbits = OrbitForest(degree_, prune_generators(sg, c->order));
    }
    ++nodes_;
    Node* raw = c.get();
    n->children.emplace(r, std::move(c));
    return raw;
  }

  // Node whose prefix is the canonical image of t, and g with t^g equal to that prefix.
  std::pair<Node*, Permutation> canonicalize(const Tuple& t) {
    Node* n = root_.get();
    Permutation g = Permutation::identity(degree_);
    for (Point x : t) {
      Point y = g[x];
      n->orbits.to_rep_in_place(g, y);
      n = child(n, n->orbits.rep(y));
    }
    return {n, std::move(g)};
  }

 private:
  // Keeps a generating subset: drops generators already in the group of the earlier ones.
  std::vector<Permutation> prune_generators(const std::vector<Permutation>& gens, const Order& order) const {
    if (gens.size() <= 2) return gens;
    std::vector<Permutation> kept;
    for (const auto& g : gens) {
      if (!kept.empty()) {
        auto c = StabilizerChain::build(degree_, kept);
        if (c.contains(g)) continue;
        kept.push_back(g);
        if (StabilizerChain::build(degree_, kept).order() == order) break;
      } else {
        kept.push_back(g);
      }
    }
    return kept;
  }

  std::size_t degree_;
  std::unique_ptr<Node> root_;
  std::size_t nodes_ = 0;
};

}  // namespace relc
