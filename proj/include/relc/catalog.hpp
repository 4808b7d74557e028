#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relc/group.hpp"

namespace relc::catalog {

enum class Base { kSym, kAlt };

inline std::string base_name(Base b) { return b == Base::kSym ? "Sym" : "Alt"; }

struct CatalogEntry {
  CatalogEntry(std::string n, std::map<std::string, std::string> p, PermutationGroup g)
      : name(std::move(n)), params(std::move(p)), group(std::move(g)) {}

  std::string name;
  std::map<std::string, std::string> params;
  PermutationGroup group;
  std::optional<int> expected_rc;
  bool rc_is_upper_bound = false;
  std::string citation;  // label of the result the expected value comes from
  std::optional<bool> expected_primitive;
  bool in_product_family = false;  // subgroup of Sym(m) wr Sym(r) containing Alt(m)^r on k-subsets
  std::optional<Order> expected_order;

  std::string label() const {
    std::string s = name + "(";
    bool first = true;
    for (const auto& [k, v] : params) {
      if (!first) s += ",";
      s += k + "=" + v;
      first = false;
    }
    return s + ")";
  }
};

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Order factorial(long n) {
  Order r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline long mod(long a, long p) { return ((a % p) + p) % p; }

inline long inverse_mod(long a, long p) {
  long r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline long primitive_root(long p) {
  for (long g = 1; g < p; ++g) {
    long x = 1;
    long ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;
}

inline Permutation cycle_perm(std::size_t n, const std::vector<Point>& cyc) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
  return Permutation::from_images_unchecked(std::move(img));
}

inline std::vector<Permutation> symmetric_generators(std::size_t n) {
  std::vector<Permutation> g;
  if (n >= 2) g.push_back(cycle_perm(n, {0, 1}));
  if (n >= 3) {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    g.push_back(cycle_perm(n, c));
  }
  return g;
}

inline std::vector<Permutation> alternating_generators(std::size_t n) {
  std::vector<Permutation> g;
  if (n < 3) return g;
  g.push_back(cycle_perm(n, {0, 1, 2}));
  if (n >= 4) {
    std::vector<Point> c;
    for (Point i = (n % 2 ? 0 : 1); i < n; ++i) c.push_back(i);
    g.push_back(cycle_perm(n, c));
  }
  return g;
}

inline std::vector<Permutation> base_generators(Base b, std::size_t n) {
  return b == Base::kSym ? symmetric_generators(n) : alternating_generators(n);
}

// Image of the given generators of Sym(n) on a list of objects built from points.
template <class Obj, class Act>
std::vector<Permutation> induced_generators(const std::vector<Permutation>& gens, const std::vector<Obj>& objs,
                                            Act&& act) {
  std::map<Obj, Point> index;
  for (std::size_t i = 0; i < objs.size(); ++i) index[objs[i]] = static_cast<Point>(i);
  std::vector<Permutation> out;
  for (const auto& g : gens) {
    std::vector<Point> img(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) img[i] = index.at(act(g, objs[i]));
    out.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  return out;
}

inline CatalogEntry symmetric_natural(long n) {
  if (n < 1 || n > static_cast<long>(kMaxDegree)) fail(ErrorCode::kBadParameter, "n");
  CatalogEntry e{"symmetric_natural", {{"n", std::to_string(n)}},
                 PermutationGroup(n, symmetric_generators(n))};
  e.expected_rc = 2;
  e.citation = "symmetric group, natural action";
  e.expected_primitive = n >= 2 ? std::optional<bool>(true) : std::nullopt;
  e.in_product_family = true;
  e.expected_order = factorial(n);
  return e;
}

inline CatalogEntry alternating_natural(long n) {
  if (n < 3 || n > static_cast<long>(kMaxDegree)) fail(ErrorCode::kBadParameter, "n must be at least 3");
  CatalogEntry e{"alternating_natural", {{"n", std::to_string(n)}},
                 PermutationGroup(n, alternating_generators(n))};
  e.expected_rc = static_cast<int>(std::max(2L, n - 1));
  e.citation = "alternating group, natural action";
  e.expected_primitive = true;
  e.in_product_family = true;
  e.expected_order = factorial(n) / 2;
  return e;
}

inline CatalogEntry cyclic_regular(long n) {
  if (n < 1 || n > static_cast<long>(kMaxDegree)) fail(ErrorCode::kBadParameter, "n");
  std::vector<Point> c(n);
  std::iota(c.begin(), c.end(), Point{0});
  std::vector<Permutation> g;
  if (n >= 2) g.push_back(cycle_perm(n, c));
  CatalogEntry e{"cyclic_regular", {{"n", std::to_string(n)}}, PermutationGroup(n, g)};
  e.expected_rc = 2;
  e.citation = "regular action";
  if (n >= 2) e.expected_primitive = is_prime(n);
  e.expected_order = n;
  return e;
}

inline CatalogEntry dihedral_polygon(long n) {
  if (n < 3 || n > static_cast<long>(kMaxDegree)) fail(ErrorCode::kBadParameter, "n must be at least 3");
  std::vector<Point> c(n), r(n);
  std::iota(c.begin(), c.end(), Point{0});
  for (long i = 0; i < n; ++i) r[i] = static_cast<Point>(mod(-i, n));
  CatalogEntry e{"dihedral_polygon",
                 {{"n", std::to_string(n)}},
                 PermutationGroup(n, {cycle_perm(n, c), Permutation::from_images_unchecked(r)})};
  if (is_prime(n) && n % 2 == 1) {
    e.expected_rc = 2;
    e.citation = "regular normal subgroup, point stabilizer of order 2";
  }
  e.expected_primitive = is_prime(n);
  e.expected_order = 2 * n;
  return e;
}

inline std::vector<std::vector<Point>> k_subsets(long n, long k) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  std::function<void(Point)> rec = [&](Point start) {
    if (static_cast<long>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Point i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline int floor_log2(long x) {
  int r = 0;
  while (x >>= 1) ++r;
  return r;
}

inline int k_subsets_rc(Base b, long n, long k) {
  if (b == Base::kSym) return 2 + floor_log2(k);
  if (k == 1) return static_cast<int>(n - 1);
  if (k == 2) return static_cast<int>(std::max(n - 2, 3L));
  if (k >= 3 && n == 2 * k + 2) return static_cast<int>(n - 2);
  return static_cast<int>(n - 3);
}

inline CatalogEntry k_subsets_action(Base b, long n, long k) {
  if (k < 1 || 2 * k > n) fail(ErrorCode::kBadParameter, "need 1 <= k and 2k <= n");
  if (b == Base::kAlt && n < 3) fail(ErrorCode::kBadParameter, "Alt needs n >= 3");
  auto objs = k_subsets(n, k);
  if (objs.size() > kMaxDegree) fail(ErrorCode::kDegreeTooLarge, std::to_string(objs.size()));
  auto gens = induced_generators(base_generators(b, n), objs, [](const Permutation& g, std::vector<Point> s) {
    for (auto& x : s) x = g[x];
    std::sort(s.begin(), s.end());
    return s;
  });
  CatalogEntry e{"k_subsets_action",
                 {{"base", base_name(b)}, {"n", std::to_string(n)}, {"k", std::to_string(k)}},
                 PermutationGroup(objs.size(), gens)};
  e.expected_rc = k_subsets_rc(b, n, k);
  e.citation = "k-subsets theorem";
  if (n > 2 * k || k == 1) e.expected_primitive = true;
  else e.expected_primitive = false;
  e.in_product_family = true;
  e.expected_order = b == Base::kSym ? factorial(n) : factorial(n) / 2;
  return e;
}

inline std::vector<std::vector<std::pair<Point, Point>>> perfect_matchings(long points) {
  std::vector<std::vector<std::pair<Point, Point>>> out;
  std::vector<std::pair<Point, Point>> cur;
  std::vector<char> used(points, 0);
  std::function<void()> rec = [&] {
    Point first = 0;
    while (first < points && used[first]) ++first;
    if (first == points) {
      out.push_back(cur);
      return;
    }
    used[first] = 1;
    for (Point j = first + 1; j < points; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      cur.emplace_back(first, j);
      rec();
      cur.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };
  rec();
  return out;
}

inline int matchings_rc(Base b, long n) {
  if (b == Base::kSym) return static_cast<int>(n);
  if (n == 2) return 2;
  if (n == 3 || n == 4) return 4;
  long r = n % 6;
  if (r == 2 || r == 4) return static_cast<int>(n - 1);
  return static_cast<int>(n);
}

// Action on perfect matchings of {0..points-1}; points = 2n.
inline CatalogEntry matchings_action(Base b, long points) {
  if (points < 4 || points % 2) fail(ErrorCode::kBadParameter, "need an even number of points, at least 4");
  if (points > 12) fail(ErrorCode::kDegreeTooLarge, "matchings of more than 12 points");
  auto objs = perfect_matchings(points);
  auto gens = induced_generators(base_generators(b, points), objs,
                                 [](const Permutation& g, std::vector<std::pair<Point, Point>> m) {
                                   for (auto& [x, y] : m) {
                                     x = g[x];
                                     y = g[y];
                                     if (x > y) std::swap(x, y);
                                   }
                                   std::sort(m.begin(), m.end());
                                   return m;
                                 });
  CatalogEntry e{"matchings_action",
                 {{"base", base_name(b)}, {"points", std::to_string(points)}},
                 PermutationGroup(objs.size(), gens)};
  e.expected_rc = matchings_rc(b, points / 2);
  e.citation = "matchings formula";
  e.expected_primitive = points >= 6 ? std::optional<bool>(true) : std::nullopt;
  // Sym(4) and Alt(4) act on 3 matchings through a quotient.
  if (points == 4) e.expected_order = b == Base::kSym ? 6 : 3;
  else e.expected_order = b == Base::kSym ? factorial(points) : factorial(points) / 2;
  return e;
}

// Sym(m) wr Sym(r) in product action on m^r tuples, index = sum a_i m^i.
inline CatalogEntry product_action(long m, long r) {
  if (m < 2 || r < 2) fail(ErrorCode::kBadParameter, "need m >= 2 and r >= 2");
  long t = 1;
  for (long i = 0; i < r; ++i) {
    t *= m;
    if (t > 10000) fail(ErrorCode::kDegreeTooLarge, "m^r exceeds 10^4");
  }
  auto digits = [&](long x) {
    std::vector<long> d(r);
    for (long i = 0; i < r; ++i) {
      d[i] = x % m;
      x /= m;
    }
    return d;
  };
  auto number = [&](const std::vector<long>& d) {
    long x = 0;
    for (long i = r; i-- > 0;) x = x * m + d[i];
    return static_cast<Point>(x);
  };
  std::vector<Permutation> gens;
  for (const auto& s : symmetric_generators(m)) {
    std::vector<Point> img(t);
    for (long x = 0; x < t; ++x) {
      auto d = digits(x);
      d[0] = s[d[0]];
      img[x] = number(d);
    }
    gens.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  for (const auto& s : symmetric_generators(r)) {
    std::vector<Point> img(t);
    for (long x = 0; x < t; ++x) {
      auto d = digits(x);
      std::vector<long> e(r);
      for (long i = 0; i < r; ++i) e[s[i]] = d[i];
      img[x] = number(e);
    }
    gens.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  CatalogEntry e{"product_action", {{"m", std::to_string(m)}, {"r", std::to_string(r)}},
                 PermutationGroup(t, gens)};
  // For m = 2 the closed form is confirmed from r = 4 on; r = 2, 3 are binary.
  if (m != 2 || r >= 4) {
    e.expected_rc = m == 2 ? 2 + floor_log2(r) : static_cast<int>(m) + floor_log2(r);
    e.rc_is_upper_bound = m != 2;
    e.citation = "product action formula";
  }
  e.expected_primitive = m >= 3;
  e.in_product_family = true;
  Order o = factorial(r);
  for (long i = 0; i < r; ++i) o *= factorial(m);
  e.expected_order = o;
  return e;
}

// Lexicographically least (b, c) with x^2 + b x + c irreducible over F_q.
inline std::pair<long, long> anisotropic_form(long q) {
  for (long b = 0; b < q; ++b)
    for (long c = 0; c < q; ++c) {
      bool root = false;
      for (long x = 0; x < q && !root; ++x) root = mod(x * x + b * x + c, q) == 0;
      if (!root) return {b, c};
    }
  fail(ErrorCode::kConditionFailed, "NoAnisotropicForm");
}

inline CatalogEntry affine_orthogonal(long q, long dim) {
  if (!(dim == 1 || dim == 2)) fail(ErrorCode::kBadParameter, "dim must be 1 or 2");
  if (!is_prime(q) || q == 2 || q > 13 || (dim == 2 && q > 7))
    fail(ErrorCode::kBadParameter, "q must be an odd prime (<= 13, or <= 7 in dimension 2)");
  CatalogEntry e{"affine_orthogonal", {{"q", std::to_string(q)}, {"dim", std::to_string(dim)}},
                 PermutationGroup()};
  if (dim == 1) {
    std::vector<Point> t(q), n(q);
    for (long x = 0; x < q; ++x) {
      t[x] = static_cast<Point>(mod(x + 1, q));
      n[x] = static_cast<Point>(mod(-x, q));
    }
    e.group = PermutationGroup(q, {Permutation::from_images_unchecked(t), Permutation::from_images_unchecked(n)});
    e.expected_order = 2 * q;
  } else {
    auto [b, c] = anisotropic_form(q);
    auto Q = [&, b = b, c = c](long x, long y) { return mod(x * x + b * x * y + c * y * y, q); };
    const long t = q * q;
    auto idx = [&](long x, long y) { return static_cast<Point>(mod(x, q) + q * mod(y, q)); };
    std::vector<Permutation> gens;
    for (auto [dx, dy] : {std::pair<long, long>{1, 0}, std::pair<long, long>{0, 1}}) {
      std::vector<Point> img(t);
      for (long y = 0; y < q; ++y)
        for (long x = 0; x < q; ++x) img[idx(x, y)] = idx(x + dx, y + dy);
      gens.push_back(Permutation::from_images_unchecked(std::move(img)));
    }
    long isometries = 0;
    for (long a11 = 0; a11 < q; ++a11)
      for (long a12 = 0; a12 < q; ++a12)
        for (long a21 = 0; a21 < q; ++a21)
          for (long a22 = 0; a22 < q; ++a22) {
            if (mod(a11 * a22 - a12 * a21, q) == 0) continue;
            // (x, y) -> (a11 x + a12 y, a21 x + a22 y)
            bool iso = true;
            for (long y = 0; y < q && iso; ++y)
              for (long x = 0; x < q && iso; ++x)
                iso = Q(a11 * x + a12 * y, a21 * x + a22 * y) == Q(x, y);
            if (!iso) continue;
            ++isometries;
            std::vector<Point> img(t);
            for (long y = 0; y < q; ++y)
              for (long x = 0; x < q; ++x) img[idx(x, y)] = idx(a11 * x + a12 * y, a21 * x + a22 * y);
            gens.push_back(Permutation::from_images_unchecked(std::move(img)));
          }
    if (isometries != 2 * (q + 1)) fail(ErrorCode::kConditionFailed, "unexpected isometry count");
    e.group = PermutationGroup(t, gens);
    e.params["form"] = "x^2+" + std::to_string(b) + "xy+" + std::to_string(c) + "y^2";
    e.expected_order = Order(t) * 2 * (q + 1);
  }
  e.expected_rc = 2;
  e.citation = dim == 1 ? "dihedral action on a prime polygon" : "affine orthogonal group, anisotropic form";
  e.expected_primitive = true;
  return e;
}

inline CatalogEntry agl1(long p) {
  if (!is_prime(p) || p > 31) fail(ErrorCode::kBadParameter, "p must be a prime <= 31");
  std::vector<Point> t(p), m(p);
  long w = primitive_root(p);
  for (long x = 0; x < p; ++x) {
    t[x] = static_cast<Point>(mod(x + 1, p));
    m[x] = static_cast<Point>(mod(w * x, p));
  }
  CatalogEntry e{"agl1", {{"p", std::to_string(p)}},
                 PermutationGroup(p, {Permutation::from_images_unchecked(t), Permutation::from_images_unchecked(m)})};
  e.expected_primitive = true;
  e.expected_order = p * (p - 1);
  return e;
}

// Points 0..p-1 are F_p, point p is infinity.
inline CatalogEntry psl2_projective(long p) {
  if (!is_prime(p) || p > 31) fail(ErrorCode::kBadParameter, "p must be a prime <= 31");
  const long inf = p;
  std::vector<Point> t(p + 1), s(p + 1);
  for (long x = 0; x < p; ++x) {
    t[x] = static_cast<Point>(mod(x + 1, p));
    s[x] = static_cast<Point>(x == 0 ? inf : mod(-inverse_mod(x, p), p));
  }
  t[inf] = static_cast<Point>(inf);
  s[inf] = 0;
  CatalogEntry e{"psl2_projective", {{"p", std::to_string(p)}},
                 PermutationGroup(p + 1, {Permutation::from_images_unchecked(t), Permutation::from_images_unchecked(s)})};
  e.expected_primitive = true;
  e.expected_order = Order(p) * (p * p - 1) / (p == 2 ? 1 : 2);
  return e;
}

// Group on the element set of T generated by right translations, conjugations and (optionally)
// inversion. Point 0 is the identity of T; the remaining points follow in sorted order.
struct DiagonalAction {
  CatalogEntry entry;
  std::vector<Permutation> elements;  // point i is elements[i]
};

inline DiagonalAction diagonal_type_on_T(const PermutationGroup& t, const std::string& t_label = "T",
                                         bool with_inversion = true) {
  if (t.order() > 360) fail(ErrorCode::kTooLarge, "|T| must be at most 360");
  auto elts = elements(t);
  std::sort(elts.begin(), elts.end());
  bool abelian = true;
  for (const auto& a : t.generators())
    for (const auto& b : t.generators())
      if (a * b != b * a) abelian = false;
  if (abelian) fail(ErrorCode::kAbelianInput);
  std::map<Permutation, Point> index;
  for (std::size_t i = 0; i < elts.size(); ++i) index[elts[i]] = static_cast<Point>(i);
  const std::size_t n = elts.size();
  auto make = [&](auto&& f) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = index.at(f(elts[i]));
    return Permutation::from_images_unchecked(std::move(img));
  };
  std::vector<Permutation> gens;
  for (const auto& s : t.generators()) gens.push_back(make([&](const Permutation& x) { return x * s; }));
  for (const auto& s : t.generators()) gens.push_back(make([&](const Permutation& x) { return x.conjugate_by(s); }));
  if (with_inversion) gens.push_back(make([](const Permutation& x) { return x.inverse(); }));
  std::map<std::string, std::string> params{{"T", t_label}};
  if (!with_inversion) params["inversion"] = "no";
  CatalogEntry e{"diagonal_type_on_T", std::move(params), PermutationGroup(n, gens)};
  return {std::move(e), std::move(elts)};
}

inline CatalogEntry intransitive_join(long n) {
  if (n < 3 || n > 7) fail(ErrorCode::kBadParameter, "need 3 <= n <= 7");
  const std::size_t deg = n + 2;
  std::vector<Permutation> gens;
  for (const auto& s : symmetric_generators(n)) {
    std::vector<Point> img(deg);
    for (long i = 0; i < n; ++i) img[i] = s[i];
    bool odd = !s.is_even();
    img[n] = static_cast<Point>(odd ? n + 1 : n);
    img[n + 1] = static_cast<Point>(odd ? n : n + 1);
    gens.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  CatalogEntry e{"intransitive_join", {{"n", std::to_string(n)}}, PermutationGroup(deg, gens)};
  e.expected_rc = static_cast<int>(n);
  e.citation = "natural action joined with the sign orbit";
  e.expected_order = factorial(n);
  return e;
}

inline PermutationGroup sym(long n) { return PermutationGroup(n, symmetric_generators(n)); }
inline PermutationGroup alt(long n) { return PermutationGroup(n, alternating_generators(n)); }

// Parses "sym:5" / "alt:5" style group names used for diagonal actions.
inline std::pair<PermutationGroup, std::string> named_small_group(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorCode::kBadParameter, "expected sym:n or alt:n");
  std::string kind = text.substr(0, colon);
  long n = std::stol(text.substr(colon + 1));
  if (kind == "sym") return {sym(n), "Sym(" + std::to_string(n) + ")"};
  if (kind == "alt") return {alt(n), "Alt(" + std::to_string(n) + ")"};
  fail(ErrorCode::kBadParameter, "unknown group kind " + kind);
}

// Default instances of every constructor.
inline std::vector<CatalogEntry> standard_entries() {
  std::vector<CatalogEntry> out;
  for (long n = 3; n <= 8; ++n) out.push_back(symmetric_natural(n));
  for (long n = 3; n <= 7; ++n) out.push_back(alternating_natural(n));
  for (long n : {5, 6, 7, 11, 13}) out.push_back(cyclic_regular(n));
  for (long n : {4, 5, 7, 11}) out.push_back(dihedral_polygon(n));
  for (auto [b, n, k] : std::vector<std::tuple<Base, long, long>>{{Base::kSym, 5, 2},
                                                                   {Base::kSym, 6, 2},
                                                                   {Base::kSym, 6, 3},
                                                                   {Base::kSym, 8, 4},
                                                                   {Base::kAlt, 5, 2},
                                                                   {Base::kAlt, 6, 2},
                                                                   {Base::kAlt, 6, 3},
                                                                   {Base::kAlt, 7, 3}})
    out.push_back(k_subsets_action(b, n, k));
  for (auto [b, pts] : std::vector<std::pair<Base, long>>{{Base::kSym, 4}, {Base::kAlt, 4}, {Base::kSym, 6}, {Base::kAlt, 6}})
    out.push_back(matchings_action(b, pts));
  for (auto [m, r] : std::vector<std::pair<long, long>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) out.push_back(product_action(m, r));
  for (auto [q, d] : std::vector<std::pair<long, long>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}})
    out.push_back(affine_orthogonal(q, d));
  for (long p : {5, 7, 11}) out.push_back(agl1(p));
  for (long p : {5, 7, 11}) out.push_back(psl2_projective(p));
  for (const char* t : {"sym:3", "alt:4", "alt:5"}) {
    auto [g, label] = named_small_group(t);
    out.push_back(diagonal_type_on_T(g, label).entry);
  }
  for (long n : {3, 4, 5}) out.push_back(intransitive_join(n));
  return out;
}

// Constructors addressable by name with string parameters, for file and command-line use.
struct Constructor {
  std::string name;
  std::vector<std::string> params;
  std::string summary;
  std::function<CatalogEntry(const std::map<std::string, std::string>&)> build;
};

namespace detail {

inline long int_param(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) fail(ErrorCode::kBadParameter, "missing parameter " + key);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) fail(ErrorCode::kBadParameter, key + " must be an integer");
  return v;
}

inline Base base_param(const std::map<std::string, std::string>& p) {
  auto it = p.find("base");
  if (it == p.end()) fail(ErrorCode::kBadParameter, "missing parameter base");
  if (it->second == "Sym" || it->second == "sym") return Base::kSym;
  if (it->second == "Alt" || it->second == "alt") return Base::kAlt;
  fail(ErrorCode::kBadParameter, "base must be Sym or Alt");
}

}  // namespace detail

inline const std::vector<Constructor>& constructors() {
  using P = std::map<std::string, std::string>;
  using detail::int_param;
  static const std::vector<Constructor> all = {
      {"symmetric_natural", {"n"}, "Sym(n) on n points", [](const P& p) { return symmetric_natural(int_param(p, "n")); }},
      {"alternating_natural", {"n"}, "Alt(n) on n points",
       [](const P& p) { return alternating_natural(int_param(p, "n")); }},
      {"cyclic_regular", {"n"}, "C_n acting regularly", [](const P& p) { return cyclic_regular(int_param(p, "n")); }},
      {"dihedral_polygon", {"n"}, "D_2n on the vertices of an n-gon",
       [](const P& p) { return dihedral_polygon(int_param(p, "n")); }},
      {"k_subsets_action", {"base", "n", "k"}, "Sym(n) or Alt(n) on k-subsets",
       [](const P& p) { return k_subsets_action(detail::base_param(p), int_param(p, "n"), int_param(p, "k")); }},
      {"matchings_action", {"base", "points"}, "Sym or Alt on perfect matchings",
       [](const P& p) { return matchings_action(detail::base_param(p), int_param(p, "points")); }},
      {"product_action", {"m", "r"}, "Sym(m) wr Sym(r) in product action",
       [](const P& p) { return product_action(int_param(p, "m"), int_param(p, "r")); }},
      {"affine_orthogonal", {"q", "dim"}, "F_q^dim x| O(V) for an anisotropic form",
       [](const P& p) { return affine_orthogonal(int_param(p, "q"), int_param(p, "dim")); }},
      {"agl1", {"p"}, "AGL_1(p) on p points", [](const P& p) { return agl1(int_param(p, "p")); }},
      {"psl2_projective", {"p"}, "PSL_2(p) on the projective line",
       [](const P& p) { return psl2_projective(int_param(p, "p")); }},
      {"diagonal_type_on_T", {"T"}, "T x Inn(T) with inversion on T, T given as sym:n or alt:n",
       [](const P& p) {
         auto it = p.find("T");
         if (it == p.end()) fail(ErrorCode::kBadParameter, "missing parameter T");
         auto [g, label] = named_small_group(it->second);
         return diagonal_type_on_T(g, label).entry;
       }},
      {"intransitive_join", {"n"}, "Sym(n) on n points plus sign on 2 points",
       [](const P& p) { return intransitive_join(int_param(p, "n")); }},
  };
  return all;
}

inline CatalogEntry build(const std::string& name, const std::map<std::string, std::string>& params) {
  for (const auto& c : constructors()) {
    if (c.name != name) continue;
    for (const auto& [k, v] : params)
      if (std::find(c.params.begin(), c.params.end(), k) == c.params.end())
        fail(ErrorCode::kBadParameter, "unknown parameter " + k + " for " + name);
    return c.build(params);
  }
  fail(ErrorCode::kBadParameter, "unknown constructor " + name);
}

}  // namespace relc::catalog
