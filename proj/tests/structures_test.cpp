#include "relc/structures.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "relc/catalog.hpp"

namespace relc {
namespace {

using namespace digraphs;

std::size_t brute_isomorphism_count(const RelationalStructure& a, const RelationalStructure& b) {
  if (!same_signature(a, b)) return 0;
  std::vector<Point> p(a.vertices);
  std::iota(p.begin(), p.end(), Point{0});
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.relations.size() && ok; ++i)
      for (const auto& t : a.relations[i].tuples) {
        Tuple u;
        for (Point x : t) u.push_back(p[x]);
        if (!b.relations[i].tuples.count(u)) {
          ok = false;
          break;
        }
      }
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

RelationalStructure random_structure(std::mt19937_64& rng, std::size_t n) {
  RelationalStructure r{n, {}};
  std::size_t rels = 1 + rng() % 2;
  for (std::size_t i = 0; i < rels; ++i) {
    Relation rel{2 + rng() % 2, {}};
    std::size_t count = rng() % (2 * n + 1);
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t;
      for (std::size_t k = 0; k < rel.arity; ++k) t.push_back(static_cast<Point>(rng() % n));
      rel.tuples.insert(t);
    }
    r.relations.push_back(std::move(rel));
  }
  return r;
}

TEST(InducedSubstructure, Examples) {
  auto k4 = complete(4).structure();
  auto sub = induced_substructure(k4, {1, 3});
  EXPECT_EQ(sub.vertices, 2u);
  EXPECT_EQ(sub.relations[0].tuples, complete(2).structure().relations[0].tuples);
  auto path = induced_substructure(cycle(5).structure(), {0, 1, 2});
  EXPECT_EQ(path.relations[0].tuples.size(), 4u);
  EXPECT_FALSE(path.relations[0].tuples.count({0, 2}));
  auto c5 = cycle(5).structure();
  EXPECT_EQ(induced_substructure(c5, {0, 1, 2, 3, 4}).relations[0].tuples, c5.relations[0].tuples);
  EXPECT_THROW(induced_substructure(c5, {7}), Error);
}

TEST(Isomorphisms, Examples) {
  EXPECT_EQ(all_isomorphisms(complete(3).structure(), complete(3).structure()).size(), 6u);
  Digraph rev(3);
  for (auto [u, v] : directed_cycle(3).edges()) rev.add_edge(v, u);
  EXPECT_EQ(all_isomorphisms(directed_cycle(3).structure(), rev.structure()).size(), 3u);
  EXPECT_TRUE(all_isomorphisms(complete(2).structure(), empty(2).structure()).empty());
}

TEST(Isomorphisms, AgreeWithBruteForce) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto a = random_structure(rng, n);
    std::vector<Point> p(n);
    std::iota(p.begin(), p.end(), Point{0});
    std::shuffle(p.begin(), p.end(), rng);
    RelationalStructure b{n, {}};
    for (const auto& rel : a.relations) {
      Relation nr{rel.arity, {}};
      for (const auto& t : rel.tuples) {
        Tuple u;
        for (Point x : t) u.push_back(p[x]);
        nr.tuples.insert(u);
      }
      b.relations.push_back(nr);
    }
    EXPECT_EQ(all_isomorphisms(a, b).size(), brute_isomorphism_count(a, b));
    EXPECT_EQ(automorphism_group(a).order(), brute_isomorphism_count(a, a));
  }
}

TEST(AutomorphismGroup, NamedDigraphs) {
  EXPECT_EQ(automorphism_group(H0()).order(), 24);
  EXPECT_EQ(automorphism_group(H1()).order(), 16);
  EXPECT_EQ(automorphism_group(H2()).order(), 48);
  EXPECT_EQ(automorphism_group(direct_product(complete(3), complete(3))).order(), 72);
  for (std::size_t n = 3; n <= 8; ++n) EXPECT_EQ(automorphism_group(cycle(n)).order(), 2 * n);
  EXPECT_EQ(automorphism_group(directed_cycle(5)).order(), 5);
  EXPECT_EQ(automorphism_group(complete(5)).order(), 120);
}

TEST(Digraphs, Counts) {
  EXPECT_EQ(cycle(5).edge_count(), 10u);
  auto h2 = H2();
  EXPECT_EQ(h2.vertices(), 12u);
  EXPECT_EQ(h2.edge_count(), 60u);
  std::size_t mates = 0;
  for (auto [u, v] : h2.edges()) mates += (u ^ 1) == v;
  EXPECT_EQ(mates, 12u);
  EXPECT_EQ(H0().edge_count(), 24u);
  EXPECT_EQ(H1().edge_count(), 24u);
  EXPECT_THROW(cycle(2), Error);
  EXPECT_THROW(Digraph(3).add_edge(1, 1), Error);
}

TEST(Homogeneity, Examples) {
  EXPECT_TRUE(is_homogeneous(complete(5)).homogeneous);
  EXPECT_TRUE(is_homogeneous(cycle(5)).homogeneous);
  EXPECT_TRUE(is_homogeneous(composition(complete(2), empty(3))).homogeneous);
  Digraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 0);
  path.add_edge(1, 2);
  path.add_edge(2, 1);
  auto r = is_homogeneous(path);
  EXPECT_FALSE(r.homogeneous);
  ASSERT_TRUE(r.failure);
  EXPECT_TRUE(is_homogeneous(H0()).homogeneous);
  EXPECT_TRUE(is_homogeneous(H1()).homogeneous);
  EXPECT_FALSE(is_homogeneous(cycle(6)).homogeneous);
  EXPECT_THROW(is_homogeneous(H2()), Error);
  EXPECT_TRUE(is_homogeneous(H2(), 12).homogeneous);
  EXPECT_TRUE(is_homogeneous(direct_product(complete(3), complete(3))).homogeneous);
}

TEST(Homogeneity, FailureIsGenuine) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + rng() % 5;
    Digraph d(n);
    for (Point u = 0; u < n; ++u)
      for (Point v = 0; v < n; ++v)
        if (u != v && rng() % 2) d.add_edge(u, v);
    auto r = is_homogeneous(d);
    EXPECT_EQ(r.homogeneous, is_homogeneous(complement(d)).homogeneous);
    if (r.homogeneous) continue;
    ASSERT_TRUE(r.failure);
    const auto& [a, b] = *r.failure;
    // the map a_i -> b_i is an isomorphism of induced substructures...
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (i != j) {
          EXPECT_EQ(d.edge(a[i], a[j]), d.edge(b[i], b[j]));
        }
    // ...that no automorphism extends
    EXPECT_FALSE(transporter(automorphism_group(d), a, b));
  }
}

TEST(Homogeneity, AgreesWithDefinitionOnSmallDigraphs) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng() % 4;
    Digraph d(n);
    for (Point u = 0; u < n; ++u)
      for (Point v = 0; v < n; ++v)
        if (u != v && rng() % 2) d.add_edge(u, v);
    auto aut = automorphism_group(d);
    // every partial isomorphism between ordered tuples of distinct vertices must extend
    bool homogeneous = true;
    for (std::size_t len = 1; len <= n && homogeneous; ++len) {
      auto tuples = oracle::distinct_tuples(n, len);
      for (const auto& a : tuples)
        for (const auto& b : tuples) {
          bool iso = true;
          for (std::size_t i = 0; i < len && iso; ++i)
            for (std::size_t j = 0; j < len && iso; ++j)
              if (i != j && d.edge(a[i], a[j]) != d.edge(b[i], b[j])) iso = false;
          if (iso && !transporter(aut, a, b)) homogeneous = false;
        }
    }
    EXPECT_EQ(is_homogeneous(d).homogeneous, homogeneous);
  }
}

TEST(CanonicalStructure, Examples) {
  auto s3 = canonical_structure(catalog::sym(3), 2);
  EXPECT_EQ(s3.relations.size(), 2u);
  EXPECT_EQ(s3.relations[0].tuples.count({0, 0}), 1u);
  EXPECT_EQ(canonical_structure(catalog::cyclic_regular(3).group, 2).relations.size(), 3u);
  EXPECT_THROW(canonical_structure(catalog::sym(3), 5), Error);
  EXPECT_THROW(canonical_structure(catalog::sym(3), 1), Error);
}

TEST(CanonicalStructure, FullArityRecoversGroup) {
  for (const auto& e : catalog::standard_entries()) {
    const auto& g = e.group;
    if (g.degree() < 3 || g.degree() > 7) continue;
    auto c = canonical_coloring(g, g.degree() - 1);
    EXPECT_EQ(automorphism_group(c).order(), g.order()) << e.label();
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 3 + rng() % 4;
    PermutationGroup g(n, oracle::random_generators(rng, n));
    EXPECT_EQ(automorphism_group(canonical_coloring(g, n - 1)).order(), g.order());
  }
}

TEST(StructuralRc, Examples) {
  EXPECT_EQ(structural_rc(catalog::sym(4)).rc, 2);
  EXPECT_EQ(structural_rc(catalog::alt(4)).rc, 3);
  EXPECT_EQ(structural_rc(catalog::cyclic_regular(5).group).rc, 2);
  EXPECT_THROW(structural_rc(catalog::sym(9)), Error);
}

TEST(StructuralRc, EqualsTupleRc) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 3 + rng() % 4;
    PermutationGroup g(n, oracle::random_generators(rng, n));
    auto s = structural_rc(g);
    EXPECT_FALSE(s.capped);
    EXPECT_EQ(s.rc, relational_complexity(g).rc);
  }
}

std::set<std::vector<char>> forms(const std::vector<NamedDigraph>& v) {
  std::set<std::vector<char>> out;
  for (const auto& d : v) out.insert(canonical_form(d.graph));
  return out;
}

TEST(Enumeration, MatchesPredictedFamilies) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto found = enumerate_homogeneous(n);
    std::set<std::vector<char>> all, sym, anti;
    for (const auto& d : found) {
      all.insert(canonical_form(d));
      if (d.symmetric()) sym.insert(canonical_form(d));
      if (d.antisymmetric()) anti.insert(canonical_form(d));
    }
    EXPECT_EQ(all, forms(lachlan_family(n))) << n;
    EXPECT_EQ(sym, forms(gardiner_family(n))) << n;
    EXPECT_EQ(anti, forms(lachlan_antisymmetric_family(n))) << n;
  }
}

TEST(Enumeration, SmallCases) {
  auto three = enumerate_homogeneous(3);
  std::set<std::vector<char>> f;
  for (const auto& d : three) f.insert(canonical_form(d));
  EXPECT_TRUE(f.count(canonical_form(empty(3))));
  EXPECT_TRUE(f.count(canonical_form(complete(3))));
  EXPECT_TRUE(f.count(canonical_form(directed_cycle(3))));
  auto five = enumerate_homogeneous(5);
  f.clear();
  for (const auto& d : five) f.insert(canonical_form(d));
  EXPECT_TRUE(f.count(canonical_form(cycle(5))));
  EXPECT_FALSE(f.count(canonical_form(directed_cycle(5))));
  EXPECT_EQ(enumerate_homogeneous(1).size(), 1u);
  // a single arc is not vertex-transitive, so only the empty and complete digraphs remain
  EXPECT_EQ(enumerate_homogeneous(2).size(), 2u);
  EXPECT_THROW(enumerate_homogeneous(6), Error);
}

}  // namespace
}  // namespace relc
