#pragma once

#include <cstdint>
#include <vector>

#include "relc/colored.hpp"
#include "relc/group.hpp"

namespace relc {

inline constexpr std::size_t kMaxClosureDegree = 64;

// Orbitals of G: colour of the ordered pair (a, b) is the index of its G-orbit on Omega^2.
struct OrbitalColoring {
  std::size_t degree = 0;
  std::vector<std::uint32_t> colors;  // index a * degree + b

  std::uint32_t color(Point a, Point b) const { return colors[static_cast<std::size_t>(a) * degree + b]; }
  std::uint32_t count() const {
    std::uint32_t m = 0;
    for (auto c : colors) m = std::max(m, c + 1);
    return m;
  }
};

inline OrbitalColoring orbital_coloring(const PermutationGroup& g) {
  return {g.degree(), tuple_orbit_colors(g, 2)};
}

// All permutations preserving every G-orbit on Omega^k, as the automorphism group of the
// complete k-ary orbit colouring.
inline PermutationGroup k_closure(const PermutationGroup& g, std::size_t k) {
  if (k < 2 || k > 3) fail(ErrorCode::kBadParameter, "k must be 2 or 3");
  if (g.degree() > kMaxClosureDegree) fail(ErrorCode::kDegreeTooLarge, "degree " + std::to_string(g.degree()));
  ColoredStructure s(g.degree());
  s.add_layer(k, tuple_orbit_colors(g, k));
  return automorphism_group(s, g.generators());
}

}  // namespace relc
