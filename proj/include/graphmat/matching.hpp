#pragma once

// Maximum bipartite matching (Hopcroft-Karp) and the König construction of a
// minimum vertex cover from a maximum matching.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "graphmat/error.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

struct BipartiteMatching {
  std::size_t size = 0;
  std::vector<int> mate_left;   // -1 when unmatched
  std::vector<int> mate_right;  // -1 when unmatched
};

// adjacency[l] lists the right-side neighbours of left vertex l.
inline BipartiteMatching hopcroft_karp(std::size_t right_count, const std::vector<std::vector<int>>& adjacency) {
  const std::size_t left_count = adjacency.size();
  constexpr int inf = std::numeric_limits<int>::max();
  BipartiteMatching m;
  m.mate_left.assign(left_count, -1);
  m.mate_right.assign(right_count, -1);
  std::vector<int> dist(left_count);

  auto bfs = [&] {
    std::queue<int> queue;
    bool reachable_free = false;
    for (std::size_t l = 0; l < left_count; ++l) {
      if (m.mate_left[l] < 0) {
        dist[l] = 0;
        queue.push(static_cast<int>(l));
      } else {
        dist[l] = inf;
      }
    }
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop();
      for (int r : adjacency[l]) {
        const int next = m.mate_right[r];
        if (next < 0) {
          reachable_free = true;
        } else if (dist[next] == inf) {
          dist[next] = dist[l] + 1;
          queue.push(next);
        }
      }
    }
    return reachable_free;
  };

  // Layered augmenting search; recursion depth is bounded by the layer count.
  auto dfs = [&](auto&& self, int l) -> bool {
    for (int r : adjacency[l]) {
      const int next = m.mate_right[r];
      if (next < 0 || (dist[next] == dist[l] + 1 && self(self, next))) {
        m.mate_left[l] = r;
        m.mate_right[r] = l;
        return true;
      }
    }
    dist[l] = inf;
    return false;
  };

  while (bfs()) {
    for (std::size_t l = 0; l < left_count; ++l) {
      if (m.mate_left[l] < 0 && dfs(dfs, static_cast<int>(l))) ++m.size;
    }
  }
  return m;
}

struct KonigCover {
  std::vector<bool> left;
  std::vector<bool> right;
};

// Z = vertices reachable from unmatched left vertices along alternating paths;
// the cover is (L \ Z) ∪ (R ∩ Z).
inline KonigCover konig_cover(std::size_t right_count, const std::vector<std::vector<int>>& adjacency,
                              const BipartiteMatching& matching) {
  const std::size_t left_count = adjacency.size();
  std::vector<bool> z_left(left_count, false), z_right(right_count, false);
  std::queue<int> queue;
  for (std::size_t l = 0; l < left_count; ++l) {
    if (matching.mate_left[l] < 0) {
      z_left[l] = true;
      queue.push(static_cast<int>(l));
    }
  }
  while (!queue.empty()) {
    const int l = queue.front();
    queue.pop();
    for (int r : adjacency[l]) {
      if (z_right[r] || matching.mate_left[l] == r) continue;
      z_right[r] = true;
      const int next = matching.mate_right[r];
      if (next >= 0 && !z_left[next]) {
        z_left[next] = true;
        queue.push(next);
      }
    }
  }
  KonigCover cover;
  cover.left.resize(left_count);
  cover.right.resize(right_count);
  for (std::size_t l = 0; l < left_count; ++l) cover.left[l] = !z_left[l];
  for (std::size_t r = 0; r < right_count; ++r) cover.right[r] = z_right[r];
  return cover;
}

struct VertexCover {
  std::size_t q = 0;
  std::vector<ShapeVertex> cover;  // ascending vertex index
  std::size_t matching_size = 0;
};

// Minimum vertex cover of a U-V bipartite shape. The cover built from the U
// side of the König construction keeps the largest possible part of U, which
// makes it the lexicographically smallest minimum cover in vertex order.
inline VertexCover min_vertex_cover(const ShapeGraph& h) {
  require(h.is_uv_bipartite(), ErrorKind::not_bipartite, "min_vertex_cover needs a U-V bipartite shape");
  std::vector<std::vector<int>> adjacency(h.x());
  for (std::size_t i = 0; i < h.x(); ++i) {
    for (ShapeVertex nb : h.neighbors(h.U()[i])) adjacency[i].push_back(h.v_position(nb));
  }
  const auto matching = hopcroft_karp(h.y(), adjacency);
  const auto marks = konig_cover(h.y(), adjacency, matching);
  VertexCover result;
  result.matching_size = matching.size;
  for (std::size_t i = 0; i < h.x(); ++i)
    if (marks.left[i]) result.cover.push_back(h.U()[i]);
  for (std::size_t j = 0; j < h.y(); ++j)
    if (marks.right[j]) result.cover.push_back(h.V()[j]);
  std::sort(result.cover.begin(), result.cover.end());
  result.q = result.cover.size();
  return result;
}

}  // namespace graphmat
