#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relc/colored.hpp"
#include "relc/relcomp.hpp"
#include "relc/tuple_tree.hpp"

namespace relc {

struct Relation {
  std::size_t arity = 2;
  std::set<Tuple> tuples;
};

struct RelationalStructure {
  std::size_t vertices = 0;
  std::vector<Relation> relations;

  void validate() const {
    if (vertices == 0) fail(ErrorCode::kBadParameter, "no vertices");
    for (const auto& r : relations) {
      if (r.arity < 2) fail(ErrorCode::kBadParameter, "arity below 2");
      for (const auto& t : r.tuples) {
        if (t.size() != r.arity) fail(ErrorCode::kBadParameter, "tuple length differs from arity");
        for (Point p : t)
          if (p >= vertices) fail(ErrorCode::kVertexOutOfRange, std::to_string(p));
      }
    }
  }
};

// Simple digraph: irreflexive edge set stored as an adjacency matrix.
class Digraph {
 public:
  explicit Digraph(std::size_t n = 1) : n_(n), adj_(n * n, 0) {
    if (n == 0) fail(ErrorCode::kBadParameter, "no vertices");
  }

  std::size_t vertices() const { return n_; }
  bool edge(Point u, Point v) const { return adj_[u * n_ + v]; }

  void add_edge(Point u, Point v) {
    if (u >= n_ || v >= n_) fail(ErrorCode::kVertexOutOfRange);
    if (u == v) fail(ErrorCode::kBadParameter, "loops are not allowed");
    adj_[u * n_ + v] = 1;
  }

  std::vector<std::pair<Point, Point>> edges() const {
    std::vector<std::pair<Point, Point>> out;
    for (Point u = 0; u < n_; ++u)
      for (Point v = 0; v < n_; ++v)
        if (edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const { return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)); }

  bool symmetric() const {
    for (Point u = 0; u < n_; ++u)
      for (Point v = 0; v < n_; ++v)
        if (edge(u, v) != edge(v, u)) return false;
    return true;
  }

  bool antisymmetric() const {
    for (Point u = 0; u < n_; ++u)
      for (Point v = 0; v < n_; ++v)
        if (edge(u, v) && edge(v, u)) return false;
    return true;
  }

  RelationalStructure structure() const {
    RelationalStructure r{n_, {Relation{2, {}}}};
    for (auto [u, v] : edges()) r.relations[0].tuples.insert({u, v});
    return r;
  }

  bool operator==(const Digraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  std::size_t n_;
  std::vector<char> adj_;
};

// Colour of each tuple is the set of relations containing it, numbered through a shared dictionary.
class StructureColoring {
 public:
  ColoredStructure color(const RelationalStructure& r) {
    r.validate();
    std::set<std::size_t> arities;
    for (const auto& rel : r.relations) arities.insert(rel.arity);
    ColoredStructure out(r.vertices);
    for (std::size_t a : arities) {
      const std::size_t n = checked_power(r.vertices, a, ColoredStructure::kMaxCells);
      std::map<std::size_t, std::vector<std::uint32_t>> member;
      for (std::size_t i = 0; i < r.relations.size(); ++i) {
        if (r.relations[i].arity != a) continue;
        for (const auto& t : r.relations[i].tuples) member[out.index(t)].push_back(static_cast<std::uint32_t>(i));
      }
      std::vector<std::uint32_t> colors(n, id(a, {}));
      for (auto& [idx, rels] : member) colors[idx] = id(a, rels);
      out.add_layer(a, std::move(colors));
    }
    return out;
  }

 private:
  std::uint32_t id(std::size_t arity, const std::vector<std::uint32_t>& rels) {
    auto key = std::make_pair(arity, rels);
    return dict_.emplace(key, static_cast<std::uint32_t>(dict_.size())).first->second;
  }
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, std::uint32_t> dict_;
};

inline RelationalStructure induced_substructure(const RelationalStructure& r, std::vector<Point> gamma) {
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  std::vector<std::int64_t> index(r.vertices, -1);
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] >= r.vertices) fail(ErrorCode::kVertexOutOfRange, std::to_string(gamma[i]));
    index[gamma[i]] = static_cast<std::int64_t>(i);
  }
  if (gamma.empty()) fail(ErrorCode::kBadParameter, "empty vertex set");
  RelationalStructure out{gamma.size(), {}};
  for (const auto& rel : r.relations) {
    Relation nr{rel.arity, {}};
    for (const auto& t : rel.tuples) {
      Tuple u;
      bool inside = true;
      for (Point p : t) {
        if (index[p] < 0) {
          inside = false;
          break;
        }
        u.push_back(static_cast<Point>(index[p]));
      }
      if (inside) nr.tuples.insert(std::move(u));
    }
    out.relations.push_back(std::move(nr));
  }
  return out;
}

inline bool same_signature(const RelationalStructure& a, const RelationalStructure& b) {
  if (a.vertices != b.vertices || a.relations.size() != b.relations.size()) return false;
  for (std::size_t i = 0; i < a.relations.size(); ++i)
    if (a.relations[i].arity != b.relations[i].arity || a.relations[i].tuples.size() != b.relations[i].tuples.size())
      return false;
  return true;
}

// Streams every isomorphism a -> b; f returns false to stop.
inline void structure_isomorphisms(const RelationalStructure& a, const RelationalStructure& b,
                                   const std::function<bool(const Permutation&)>& f) {
  if (!same_signature(a, b)) return;
  StructureColoring dict;
  auto ca = dict.color(a);
  auto cb = dict.color(b);
  IsomorphismSearch(ca, cb).run({}, f);
}

inline std::vector<Permutation> all_isomorphisms(const RelationalStructure& a, const RelationalStructure& b) {
  std::vector<Permutation> out;
  structure_isomorphisms(a, b, [&](const Permutation& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

inline PermutationGroup automorphism_group(const RelationalStructure& r) {
  StructureColoring dict;
  return automorphism_group(dict.color(r));
}

inline PermutationGroup automorphism_group(const Digraph& d) { return automorphism_group(d.structure()); }

struct HomogeneityResult {
  bool homogeneous = true;
  Order aut_order;
  // When not homogeneous: X+gamma and X+delta induce isomorphic substructures (identity on X,
  // gamma -> delta) but no automorphism maps one tuple to the other.
  std::optional<std::pair<Tuple, Tuple>> failure;
};

// Homogeneity via ordered tuples: along the canonical tuple tree of Aut, distinct orbits of the
// stabilizer of a prefix X must have distinct colour signatures relative to X.
inline HomogeneityResult is_homogeneous(const ColoredStructure& s, const PermutationGroup& aut) {
  const std::size_t t = s.vertices();
  HomogeneityResult res;
  res.aut_order = aut.order();
  TupleTree tree(aut);
  auto signature = [&](const Tuple& x, Point gamma) {
    Tuple pts = x;
    pts.push_back(gamma);
    const std::size_t k = x.size();
    std::vector<std::uint32_t> sig;
    std::vector<std::size_t> digits;
    for (const auto& l : s.layers()) {
      digits.assign(l.arity, 0);
      while (true) {
        bool uses = false;
        std::size_t idx = 0;
        for (std::size_t d : digits) {
          uses |= d == k;
          idx = idx * t + pts[d];
        }
        if (uses) sig.push_back(l.colors[idx]);
        std::size_t j = l.arity;
        while (j > 0) {
          if (++digits[j - 1] <= k) break;
          digits[j - 1] = 0;
          --j;
        }
        if (j == 0) break;
      }
    }
    return sig;
  };
  std::function<bool(TupleTree::Node*)> visit = [&](TupleTree::Node* n) {
    std::vector<char> in_x(t, 0);
    for (Point p : n->prefix) in_x[p] = 1;
    std::map<std::vector<std::uint32_t>, Point> seen;
    std::vector<Point> reps;
    for (Point r : n->orbits.reps()) {
      if (in_x[r]) continue;
      auto [it, fresh] = seen.emplace(signature(n->prefix, r), r);
      if (!fresh) {
        Tuple a = n->prefix, b = n->prefix;
        a.push_back(it->second);
        b.push_back(r);
        res.failure = std::make_pair(a, b);
        return false;
      }
      reps.push_back(r);
    }
    if (n->order == 1) return true;
    for (Point r : reps)
      if (!visit(tree.child(n, r))) return false;
    return true;
  };
  res.homogeneous = visit(tree.root());
  return res;
}

inline HomogeneityResult is_homogeneous(const RelationalStructure& r, std::size_t max_vertices = 10) {
  if (r.vertices > max_vertices) fail(ErrorCode::kTooLarge, "more than " + std::to_string(max_vertices) + " vertices");
  StructureColoring dict;
  auto c = dict.color(r);
  return is_homogeneous(c, automorphism_group(c));
}

inline HomogeneityResult is_homogeneous(const Digraph& d, std::size_t max_vertices = 10) {
  return is_homogeneous(d.structure(), max_vertices);
}

// Orbits of G on Omega^a for a = 2..s as one colouring.
inline ColoredStructure canonical_coloring(const PermutationGroup& g, std::size_t s) {
  if (s < 2) fail(ErrorCode::kBadParameter, "arity below 2");
  ColoredStructure c(g.degree());
  for (std::size_t a = 2; a <= s; ++a) c.add_layer(a, tuple_orbit_colors(g, a));
  return c;
}

// Relations are the G-orbits on Omega^i, i = 2..s, ordered by arity then least member.
inline RelationalStructure canonical_structure(const PermutationGroup& g, std::size_t s, std::size_t max_arity = 4) {
  if (s < 2) fail(ErrorCode::kBadParameter, "arity below 2");
  if (s > max_arity) fail(ErrorCode::kArityTooLarge, std::to_string(s));
  auto c = canonical_coloring(g, s);
  RelationalStructure r{g.degree(), {}};
  for (const auto& l : c.layers()) {
    std::uint32_t count = l.colors.empty() ? 0 : *std::max_element(l.colors.begin(), l.colors.end()) + 1;
    std::vector<Relation> rels(count, Relation{l.arity, {}});
    for (std::size_t i = 0; i < l.colors.size(); ++i) rels[l.colors[i]].tuples.insert(c.tuple(i, l.arity));
    for (auto& rel : rels) r.relations.push_back(std::move(rel));
  }
  return r;
}

struct StructuralRc {
  int rc = 2;
  bool capped = false;  // true when the search hit the size cap and rc is the tuple value
};

// Smallest s such that the orbit structure of arity <= s is homogeneous with automorphism group G.
inline StructuralRc structural_rc(const PermutationGroup& g, std::size_t max_degree = 8,
                                  std::size_t max_cells = 1000000) {
  const std::size_t t = g.degree();
  if (t > max_degree) fail(ErrorCode::kTooLarge, "degree " + std::to_string(t));
  StructuralRc out;
  if (t < 2) return out;
  for (std::size_t s = 2; s <= std::max<std::size_t>(2, t); ++s) {
    std::size_t cells = 0;
    for (std::size_t a = 2; a <= s; ++a) cells += checked_power(t, a, ColoredStructure::kMaxCells);
    if (cells > max_cells) {
      out.rc = relational_complexity(g).rc;
      out.capped = true;
      return out;
    }
    auto c = canonical_coloring(g, s);
    auto aut = automorphism_group(c, g.generators());
    if (aut.order() != g.order()) continue;
    if (is_homogeneous(c, aut).homogeneous) {
      out.rc = static_cast<int>(s);
      return out;
    }
  }
  fail(ErrorCode::kConditionFailed, "no homogeneous orbit structure found");
}

namespace digraphs {

inline Digraph complete(std::size_t n) {
  Digraph d(n);
  for (Point u = 0; u < n; ++u)
    for (Point v = 0; v < n; ++v)
      if (u != v) d.add_edge(u, v);
  return d;
}

inline Digraph empty(std::size_t n) { return Digraph(n); }

// Lambda_n: (x, y) is an edge iff x - y = 1 mod n.
inline Digraph directed_cycle(std::size_t n) {
  if (n < 3) fail(ErrorCode::kBadParameter, "cycles need at least 3 vertices");
  Digraph d(n);
  for (Point x = 0; x < n; ++x) d.add_edge(x, static_cast<Point>((x + n - 1) % n));
  return d;
}

// Delta_n: (x, y) is an edge iff x - y = +-1 mod n.
inline Digraph cycle(std::size_t n) {
  if (n < 3) fail(ErrorCode::kBadParameter, "cycles need at least 3 vertices");
  Digraph d(n);
  for (Point x = 0; x < n; ++x) {
    d.add_edge(x, static_cast<Point>((x + 1) % n));
    d.add_edge(x, static_cast<Point>((x + n - 1) % n));
  }
  return d;
}

inline Digraph complement(const Digraph& g) {
  Digraph d(g.vertices());
  for (Point u = 0; u < g.vertices(); ++u)
    for (Point v = 0; v < g.vertices(); ++v)
      if (u != v && !g.edge(u, v)) d.add_edge(u, v);
  return d;
}

// Gamma[Delta] on pairs (u, v) numbered u * |Delta| + v.
inline Digraph composition(const Digraph& g, const Digraph& h) {
  const std::size_t m = h.vertices();
  Digraph d(g.vertices() * m);
  for (Point u1 = 0; u1 < g.vertices(); ++u1)
    for (Point v1 = 0; v1 < m; ++v1)
      for (Point u2 = 0; u2 < g.vertices(); ++u2)
        for (Point v2 = 0; v2 < m; ++v2)
          if (g.edge(u1, u2) || (u1 == u2 && h.edge(v1, v2)))
            d.add_edge(static_cast<Point>(u1 * m + v1), static_cast<Point>(u2 * m + v2));
  return d;
}

inline Digraph direct_product(const Digraph& g, const Digraph& h) {
  const std::size_t m = h.vertices();
  Digraph d(g.vertices() * m);
  for (Point u1 = 0; u1 < g.vertices(); ++u1)
    for (Point v1 = 0; v1 < m; ++v1)
      for (Point u2 = 0; u2 < g.vertices(); ++u2)
        for (Point v2 = 0; v2 < m; ++v2)
          if (g.edge(u1, u2) && h.edge(v1, v2))
            d.add_edge(static_cast<Point>(u1 * m + v1), static_cast<Point>(u2 * m + v2));
  return d;
}

// Edge lists below use the 1-based vertex numbering of the drawings.
inline Digraph from_one_based(std::size_t n, const std::vector<std::pair<int, int>>& arcs,
                              const std::vector<std::pair<int, int>>& undirected = {}) {
  Digraph d(n);
  for (auto [u, v] : arcs) d.add_edge(u - 1, v - 1);
  for (auto [u, v] : undirected) {
    d.add_edge(u - 1, v - 1);
    d.add_edge(v - 1, u - 1);
  }
  return d;
}

inline Digraph H0() {
  return from_one_based(8, {{1, 4}, {1, 6}, {1, 7}, {2, 3}, {2, 4}, {2, 1}, {3, 6}, {3, 8},
                            {3, 1}, {4, 3}, {4, 5}, {4, 6}, {5, 2}, {5, 3}, {5, 8}, {6, 5},
                            {6, 7}, {6, 8}, {7, 5}, {7, 2}, {7, 4}, {8, 2}, {8, 7}, {8, 1}});
}

inline Digraph H1() {
  return from_one_based(8,
                        {{1, 8}, {1, 3}, {2, 7}, {2, 4}, {3, 6}, {3, 2}, {4, 1}, {4, 5},
                         {5, 7}, {5, 3}, {6, 4}, {6, 8}, {7, 6}, {7, 1}, {8, 2}, {8, 5}},
                        {{1, 2}, {3, 4}, {5, 6}, {7, 8}});
}

// Drawn arcs of H2 before completion.
inline std::vector<std::pair<int, int>> H2_drawn_arcs() {
  return {{1, 12}, {1, 10}, {2, 5}, {3, 2}, {4, 5}, {4, 7}, {6, 7}, {8, 9}, {9, 6}, {11, 10}, {11, 8}, {12, 3}};
}

// Completion: with w' the mate of w, an arc (v, w) forces (w', v) and an arc (w, v) forces (v, w').
inline Digraph H2() {
  const std::size_t n = 12;
  auto mate = [](Point x) { return static_cast<Point>(x ^ 1); };  // pairs {1,2}, {3,4}, ... in 1-based labels
  std::set<std::pair<Point, Point>> arcs;
  for (auto [u, v] : H2_drawn_arcs()) arcs.insert({static_cast<Point>(u - 1), static_cast<Point>(v - 1)});
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<Point, Point>> add;
    for (auto [v, w] : arcs) {
      add.emplace_back(mate(w), v);
      add.emplace_back(w, mate(v));
    }
    for (auto a : add)
      if (a.first != a.second && arcs.insert(a).second) grew = true;
  }
  Digraph d(n);
  for (auto [u, v] : arcs) d.add_edge(u, v);
  for (Point x = 0; x < n; x += 2) {
    d.add_edge(x, x + 1);
    d.add_edge(x + 1, x);
  }
  return d;
}

// Canonical form: least adjacency bitstring over all relabelings (small n only).
inline std::vector<char> canonical_form(const Digraph& d) {
  const std::size_t n = d.vertices();
  if (n > 7) fail(ErrorCode::kTooLarge, "canonical form needs n <= 7");
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), Point{0});
  std::vector<char> best, cur(n * n);
  do {
    for (Point u = 0; u < n; ++u)
      for (Point v = 0; v < n; ++v) cur[u * n + v] = d.edge(p[u], p[v]);
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

inline Digraph from_form(std::size_t n, const std::vector<char>& form) {
  Digraph d(n);
  for (Point u = 0; u < n; ++u)
    for (Point v = 0; v < n; ++v)
      if (form[u * n + v]) d.add_edge(u, v);
  return d;
}

// Every homogeneous digraph on exactly n vertices, up to isomorphism, by exhaustive generation.
inline std::vector<Digraph> enumerate_homogeneous(std::size_t n) {
  if (n < 1 || n > 5) fail(ErrorCode::kTooLarge, "enumeration needs 1 <= n <= 5");
  std::vector<std::pair<Point, Point>> slots;
  for (Point u = 0; u < n; ++u)
    for (Point v = 0; v < n; ++v)
      if (u != v) slots.emplace_back(u, v);
  std::set<std::vector<char>> forms;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  std::vector<int> out(n), in(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // homogeneous digraphs are vertex-transitive, hence in- and out-regular
    std::fill(out.begin(), out.end(), 0);
    std::fill(in.begin(), in.end(), 0);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) {
        ++out[slots[i].first];
        ++in[slots[i].second];
      }
    if (std::count(out.begin(), out.end(), out[0]) != static_cast<long>(n) ||
        std::count(in.begin(), in.end(), out[0]) != static_cast<long>(n))
      continue;
    Digraph d(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) d.add_edge(slots[i].first, slots[i].second);
    forms.insert(canonical_form(d));
  }
  std::vector<Digraph> result;
  for (const auto& f : forms) {
    Digraph d = from_form(n, f);
    if (is_homogeneous(d).homogeneous) result.push_back(std::move(d));
  }
  return result;
}

struct NamedDigraph {
  std::string name;
  Digraph graph;
};

// Homogeneous symmetric digraphs on n vertices predicted by Gardiner's list (with complements).
inline std::vector<NamedDigraph> gardiner_family(std::size_t n) {
  std::vector<NamedDigraph> base;
  if (n == 5) base.push_back({"Delta_5", cycle(5)});
  if (n == 9) base.push_back({"K3xK3", direct_product(complete(3), complete(3))});
  for (std::size_t m = 1; m <= n; ++m)
    if (n % m == 0)
      base.push_back({"K" + std::to_string(m) + "[Kbar" + std::to_string(n / m) + "]",
                      composition(complete(m), empty(n / m))});
  std::vector<NamedDigraph> out = base;
  for (const auto& b : base) out.push_back({"complement of " + b.name, complement(b.graph)});
  return out;
}

// Homogeneous antisymmetric digraphs on n vertices predicted by Lachlan's list.
inline std::vector<NamedDigraph> lachlan_antisymmetric_family(std::size_t n) {
  std::vector<NamedDigraph> out;
  if (n == 4) out.push_back({"Lambda_4", directed_cycle(4)});
  if (n == 8) out.push_back({"H0", H0()});
  out.push_back({"Kbar" + std::to_string(n), empty(n)});
  if (n % 3 == 0) {
    std::size_t k = n / 3;
    out.push_back({"Kbar" + std::to_string(k) + "[Lambda_3]", composition(empty(k), directed_cycle(3))});
    out.push_back({"Lambda_3[Kbar" + std::to_string(k) + "]", composition(directed_cycle(3), empty(k))});
  }
  return out;
}

// Homogeneous digraphs on n vertices predicted by Lachlan's list (with complements).
inline std::vector<NamedDigraph> lachlan_family(std::size_t n) {
  std::vector<NamedDigraph> base;
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k) continue;
    const std::size_t a = n / k;
    for (const auto& A : lachlan_antisymmetric_family(a)) {
      base.push_back({"K" + std::to_string(k) + "[" + A.name + "]", composition(complete(k), A.graph)});
      base.push_back({A.name + "[K" + std::to_string(k) + "]", composition(A.graph, complete(k))});
    }
  }
  for (const auto& S : gardiner_family(n)) base.push_back(S);
  if (n % 3 == 0)
    for (const auto& S : gardiner_family(n / 3)) {
      base.push_back({"Lambda_3[" + S.name + "]", composition(directed_cycle(3), S.graph)});
      base.push_back({S.name + "[Lambda_3]", composition(S.graph, directed_cycle(3))});
    }
  if (n == 8) base.push_back({"H1", H1()});
  if (n == 12) base.push_back({"H2", H2()});
  std::vector<NamedDigraph> out = base;
  for (const auto& b : base) out.push_back({"complement of " + b.name, complement(b.graph)});
  return out;
}

}  // namespace digraphs

}  // namespace relc
