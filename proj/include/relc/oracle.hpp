#pragma once
// Brute-force reference implementations, independent of the stabilizer chain machinery.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "relc/permutation.hpp"

namespace relc::oracle {

inline Permutation P(const std::string& s, std::size_t n) { return parse_permutation(s, n); }

inline std::vector<Permutation> gens_of(std::size_t n, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> out;
  for (const char* c : cycles) out.push_back(parse_permutation(c, n));
  return out;
}

// All elements of <gens> by closure under right multiplication.
inline std::vector<Permutation> closure(std::size_t n, const std::vector<Permutation>& gens) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out{Permutation::identity(n)};
  seen.insert(out[0]);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Permutation x = out[i] * g;
      if (seen.insert(x).second) out.push_back(std::move(x));
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<Permutation> transporter(const std::vector<Permutation>& elts, const Tuple& I, const Tuple& J) {
  for (const auto& g : elts)
    if (g.apply(I) == J) return g;
  return std::nullopt;
}

inline bool equivalent(const std::vector<Permutation>& elts, const Tuple& I, const Tuple& J) {
  return transporter(elts, I, J).has_value();
}

inline std::vector<Tuple> distinct_tuples(std::size_t n, std::size_t len) {
  std::vector<Tuple> out;
  Tuple cur;
  std::vector<char> used(n, 0);
  std::function<void()> rec = [&] {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (Point p = 0; p < n; ++p) {
      if (used[p]) continue;
      used[p] = 1;
      cur.push_back(p);
      rec();
      cur.pop_back();
      used[p] = 0;
    }
  };
  rec();
  return out;
}

inline std::vector<Tuple> all_tuples(std::size_t n, std::size_t len) {
  std::vector<Tuple> out;
  Tuple cur(len, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < len && ++cur[i] == n) cur[i++] = 0;
    if (i == len) break;
  }
  return out;
}

// Orbit label of a tuple: its lexicographically least image.
inline Tuple orbit_label(const std::vector<Permutation>& elts, const Tuple& t) {
  Tuple best = t;
  for (const auto& g : elts) best = std::min(best, g.apply(t));
  return best;
}

// RC by exhaustive pairing of tuples of every length up to `max_len`.
// With distinct=false, tuples may repeat entries.
inline int naive_rc(std::size_t n, const std::vector<Permutation>& elts, std::size_t max_len, bool distinct = true) {
  int rc = 2;
  for (std::size_t len = 3; len <= max_len; ++len) {
    auto tuples = distinct ? distinct_tuples(n, len) : all_tuples(n, len);
    std::map<Tuple, Tuple> label_cache;
    auto label = [&](const Tuple& t) -> const Tuple& {
      auto it = label_cache.find(t);
      if (it != label_cache.end()) return it->second;
      return label_cache.emplace(t, orbit_label(elts, t)).first->second;
    };
    // bucket by the labels of all (len-1)-subtuples
    std::map<std::vector<Tuple>, std::set<Tuple>> buckets;
    for (const auto& t : tuples) {
      std::vector<Tuple> key;
      for (std::size_t drop = 0; drop < len; ++drop) {
        Tuple s;
        for (std::size_t i = 0; i < len; ++i)
          if (i != drop) s.push_back(t[i]);
        key.push_back(label(s));
      }
      buckets[key].insert(label(t));
    }
    for (const auto& [_, labels] : buckets)
      if (labels.size() > 1) rc = std::max(rc, static_cast<int>(len));
  }
  return rc;
}

inline std::size_t fixer_count(const std::vector<Permutation>& elts, const std::vector<Point>& pts) {
  std::size_t c = 0;
  for (const auto& g : elts) {
    bool ok = true;
    for (Point p : pts)
      if (g[p] != p) {
        ok = false;
        break;
      }
    c += ok;
  }
  return c;
}

struct Stats {
  int b = 0, B = 0, H = 0, I = 0;
};

// Statistics by subset and sequence enumeration.
inline Stats brute_stats(std::size_t n, const std::vector<Permutation>& elts) {
  Stats s;
  s.b = static_cast<int>(n) + 1;
  std::vector<std::size_t> fix(std::size_t{1} << n);
  for (std::size_t m = 0; m < fix.size(); ++m) {
    std::vector<Point> pts;
    for (Point p = 0; p < n; ++p)
      if (m >> p & 1) pts.push_back(p);
    fix[m] = fixer_count(elts, pts);
  }
  for (std::size_t m = 0; m < fix.size(); ++m) {
    int sz = __builtin_popcountll(m);
    bool independent = true;
    for (Point p = 0; p < n; ++p)
      if ((m >> p & 1) && fix[m & ~(std::size_t{1} << p)] == fix[m]) independent = false;
    if (independent) s.H = std::max(s.H, sz);
    if (fix[m] == 1) {
      s.b = std::min(s.b, sz);
      if (independent) s.B = std::max(s.B, sz);
    }
  }
  // longest strictly decreasing stabilizer sequence
  std::vector<int> longest(fix.size(), -1);
  std::function<int(std::size_t)> rec = [&](std::size_t m) {
    if (longest[m] >= 0) return longest[m];
    int best = 0;
    for (Point p = 0; p < n; ++p)
      if (!(m >> p & 1) && fix[m | (std::size_t{1} << p)] < fix[m])
        best = std::max(best, 1 + rec(m | (std::size_t{1} << p)));
    return longest[m] = best;
  };
  s.I = rec(0);
  return s;
}

}  // namespace relc::oracle

namespace relc::oracle {

// Random generating sets; small-support generators keep many groups small.
inline std::vector<Permutation> random_generators(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::vector<Permutation> gens;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), 0);
    int mode = kind(rng);
    if (mode == 0) {
      std::shuffle(img.begin(), img.end(), rng);
    } else {
      std::size_t supp = mode == 1 ? 2 + rng() % 2 : 2 + rng() % (n - 1);
      std::vector<Point> pts(img);
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(std::min(supp, n));
      for (std::size_t j = 0; j < pts.size(); ++j) img[pts[j]] = pts[(j + 1) % pts.size()];
    }
    gens.push_back(Permutation(img));
  }
  return gens;
}

// Set partitions of {0..n-1} as block-label vectors (restricted growth strings).
inline std::vector<std::vector<int>> set_partitions(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxb) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      cur[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  if (n) {
    cur[0] = 0;
    rec(1, 0);
  }
  return out;
}

}  // namespace relc::oracle
