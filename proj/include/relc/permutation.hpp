#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "relc/error.hpp"

namespace relc {

using Point = std::uint32_t;
using Tuple = std::vector<Point>;

inline constexpr std::size_t kMaxDegree = 100000;

// A permutation of {0..degree-1} acting on the right: x^(p*q) = (x^p)^q.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (Point p : images_) {
      if (p >= images_.size()) fail(ErrorCode::kPointOutOfRange, std::to_string(p));
      if (seen[p]) fail(ErrorCode::kRepeatedPoint, std::to_string(p));
      seen[p] = 1;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  // Builds from images without validation; caller guarantees a bijection.
  static Permutation from_images_unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  Point image(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return from_images_unchecked(std::move(inv));
  }

  // this first, then other.
  Permutation operator*(const Permutation& other) const {
    if (other.degree() != degree()) fail(ErrorCode::kDegreeMismatch);
    std::vector<Point> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = other.images_[images_[i]];
    return from_images_unchecked(std::move(out));
  }

  Permutation& operator*=(const Permutation& other) {
    if (other.degree() != degree()) fail(ErrorCode::kDegreeMismatch);
    for (auto& v : images_) v = other.images_[v];
    return *this;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation acc = identity(degree());
    while (n) {
      if (n & 1) acc *= base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  // g^x = x^-1 g x
  Permutation conjugate_by(const Permutation& x) const { return x.inverse() * *this * x; }

  Tuple apply(const Tuple& t) const {
    Tuple out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = images_[t[i]];
    return out;
  }

  std::vector<Point> support() const {
    std::vector<Point> s;
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) s.push_back(static_cast<Point>(i));
    return s;
  }

  std::size_t fixed_point_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
    return c;
  }

  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<Point> c;
      Point x = static_cast<Point>(i);
      while (!seen[x]) {
        seen[x] = 1;
        c.push_back(x);
        x = images_[x];
      }
      if (c.size() > 1 || include_fixed) out.push_back(std::move(c));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
    return o;
  }

  bool is_even() const {
    std::size_t transpositions = 0;
    for (const auto& c : cycles()) transpositions += c.size() - 1;
    return transpositions % 2 == 0;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Disjoint-cycle notation, 1-based points, e.g. "(1 2 3)(4 5)"; "()" is the identity.
inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  if (degree > kMaxDegree) fail(ErrorCode::kDegreeTooLarge, std::to_string(degree));
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<char> used(degree, 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) fail(ErrorCode::kMalformedSyntax, "empty permutation text");
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') fail(ErrorCode::kMalformedSyntax, "expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<Point> cycle;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i == text.size()) fail(ErrorCode::kMalformedSyntax, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail(ErrorCode::kMalformedSyntax, std::string("unexpected character '") + text[i] + "'");
      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v > kMaxDegree + 1) fail(ErrorCode::kPointOutOfRange, std::string(text));
        ++i;
      }
      if (v == 0 || v > degree) fail(ErrorCode::kPointOutOfRange, std::to_string(v));
      Point p = static_cast<Point>(v - 1);
      if (used[p]) fail(ErrorCode::kRepeatedPoint, std::to_string(v));
      used[p] = 1;
      cycle.push_back(p);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation::from_images_unchecked(std::move(images));
}

inline std::string format_permutation(const Permutation& p) {
  auto cs = p.cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out;
}

}  // namespace relc
