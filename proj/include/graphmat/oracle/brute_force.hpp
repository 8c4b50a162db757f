#pragma once

// Exhaustive reference implementations used only by the test suites.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphmat/error.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"

namespace graphmat::oracle {

// Smallest vertex cover by scanning all 2^t subsets.
inline std::size_t brute_force_min_cover(const ShapeGraph& h) {
  require(h.t() <= 20, ErrorKind::cap_exceeded, "brute-force cover limited to 20 vertices");
  std::size_t best = h.t();
  for (std::uint32_t mask = 0; mask < (1u << h.t()); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    bool covers = true;
    for (const auto& [a, b] : h.edges()) {
      if (!((mask >> a) & 1u) && !((mask >> b) & 1u)) {
        covers = false;
        break;
      }
    }
    if (covers) best = size;
  }
  return best;
}

// Smallest U-V separator by scanning all 2^t subsets.
inline std::size_t brute_force_min_separator(const ShapeGraph& h) {
  require(h.t() <= 20, ErrorKind::cap_exceeded, "brute-force separator limited to 20 vertices");
  std::size_t best = h.t();
  std::vector<bool> removed(h.t());
  for (std::uint32_t mask = 0; mask < (1u << h.t()); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    for (std::size_t v = 0; v < h.t(); ++v) removed[v] = (mask >> v) & 1u;
    if (separates(h, removed)) best = size;
  }
  return best;
}

// Simple augmenting-path matching (Kuhn), independent of Hopcroft-Karp.
inline std::size_t kuhn_matching_size(const ShapeGraph& h) {
  std::vector<int> mate(h.t(), -1);
  std::vector<bool> visited;
  auto augment = [&](auto&& self, ShapeVertex u) -> bool {
    for (ShapeVertex v : h.neighbors(u)) {
      if (!h.in_V(v) || visited[v]) continue;
      visited[v] = true;
      if (mate[v] < 0 || self(self, static_cast<ShapeVertex>(mate[v]))) {
        mate[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (ShapeVertex u : h.U()) {
    visited.assign(h.t(), false);
    if (augment(augment, u)) ++size;
  }
  return size;
}

}  // namespace graphmat::oracle
