#pragma once

// Minimum U-V vertex separators and maximum systems of vertex-disjoint U-V
// paths, both read off a unit-capacity max flow on the vertex-split network.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

#include "graphmat/error.hpp"
#include "graphmat/matching.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

namespace detail {

class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(std::size_t nodes) : out_(nodes) {}

  void add_arc(int from, int to, int capacity) {
    out_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, capacity});
    out_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  // Edmonds-Karp; arcs are scanned in insertion order so the result is
  // deterministic.
  int max_flow(int source, int sink) {
    int total = 0;
    std::vector<int> via(out_.size());
    for (;;) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> queue;
      queue.push(source);
      via[source] = -2;
      while (!queue.empty() && via[sink] == -1) {
        const int node = queue.front();
        queue.pop();
        for (int a : out_[node]) {
          const int to = arcs_[a].to;
          if (arcs_[a].residual > 0 && via[to] == -1) {
            via[to] = a;
            queue.push(to);
          }
        }
      }
      if (via[sink] == -1) return total;
      for (int node = sink; node != source;) {
        const int a = via[node];
        arcs_[a].residual -= 1;
        arcs_[a ^ 1].residual += 1;
        node = arcs_[a ^ 1].to;
      }
      ++total;
    }
  }

  // Flow carried by arc index a (a forward arc).
  [[nodiscard]] int flow_on(int a) const { return arcs_[a ^ 1].residual; }
  [[nodiscard]] const std::vector<int>& arcs_from(int node) const { return out_[node]; }
  [[nodiscard]] int head(int a) const { return arcs_[a].to; }
  [[nodiscard]] static bool is_forward(int a) { return (a & 1) == 0; }

 private:
  struct Arc {
    int to;
    int residual;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
};

// Node layout: vertex v -> in-node 2v, out-node 2v+1; source 2t, sink 2t+1.
// Paths are restricted to start in U, end in V and run through W in between;
// any U-V path of H contains such a sub-path, so neither the maximum nor the
// separators change. A vertex of U ∩ V is a one-vertex path by itself.
struct SplitNetwork {
  UnitFlowNetwork net;
  int source;
  int sink;
  std::vector<int> split_arc;  // index of the in->out arc of each vertex

  SplitNetwork(const ShapeGraph& h, const std::vector<bool>& removed)
      : net(2 * h.t() + 2), source(static_cast<int>(2 * h.t())), sink(static_cast<int>(2 * h.t() + 1)) {
    const auto t = h.t();
    split_arc.resize(t);
    for (std::size_t v = 0; v < t; ++v) {
      split_arc[v] = static_cast<int>(2 * arc_count_);
      net.add_arc(in(v), out(v), removed[v] ? 0 : 1);
      ++arc_count_;
    }
    for (ShapeVertex u : h.U()) {
      net.add_arc(source, in(u), 1);
      ++arc_count_;
    }
    for (ShapeVertex v : h.V()) {
      net.add_arc(out(v), sink, 1);
      ++arc_count_;
    }
    for (const auto& [a, b] : h.edges()) {
      add_directed(h, a, b);
      add_directed(h, b, a);
    }
  }

  static int in(std::size_t v) { return static_cast<int>(2 * v); }
  static int out(std::size_t v) { return static_cast<int>(2 * v + 1); }

 private:
  std::size_t arc_count_ = 0;

  void add_directed(const ShapeGraph& h, ShapeVertex from, ShapeVertex to) {
    const bool from_ok = h.in_W(from) || (h.in_U(from) && !h.in_V(from));
    const bool to_ok = h.in_W(to) || (h.in_V(to) && !h.in_U(to));
    if (from_ok && to_ok) {
      net.add_arc(out(from), in(to), 1);
      ++arc_count_;
    }
  }
};

inline std::size_t separator_size(const ShapeGraph& h, const std::vector<bool>& removed) {
  SplitNetwork split(h, removed);
  return static_cast<std::size_t>(split.net.max_flow(split.source, split.sink));
}

}  // namespace detail

struct SeparatorResult {
  std::size_t q = 0;
  std::vector<ShapeVertex> separator;                  // ascending vertex index
  std::vector<std::vector<ShapeVertex>> disjoint_paths;  // each runs U -> W* -> V
  std::vector<std::size_t> path_lengths;                // edge counts
};

// Maximum set of pairwise vertex-disjoint U-V paths with internal vertices in W.
inline std::vector<std::vector<ShapeVertex>> max_disjoint_paths(const ShapeGraph& h) {
  detail::SplitNetwork split(h, std::vector<bool>(h.t(), false));
  split.net.max_flow(split.source, split.sink);
  std::vector<std::vector<ShapeVertex>> paths;
  const auto t = static_cast<int>(h.t());
  for (int a : split.net.arcs_from(split.source)) {
    if (!detail::UnitFlowNetwork::is_forward(a) || split.net.flow_on(a) == 0) continue;
    std::vector<ShapeVertex> path;
    int node = split.net.head(a);
    while (node != split.sink) {
      const int vertex = node / 2;
      if (node % 2 == 0) path.push_back(static_cast<ShapeVertex>(vertex));
      int next = -1;
      for (int b : split.net.arcs_from(node)) {
        if (detail::UnitFlowNetwork::is_forward(b) && split.net.flow_on(b) > 0) {
          next = split.net.head(b);
          break;
        }
      }
      if (next < 0 || next > 2 * t + 1) fail(ErrorKind::invalid_argument, "flow decomposition failed");
      node = next;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

// Minimum U-V vertex separator (lexicographically smallest in vertex order)
// together with a maximum disjoint-path system of the same size. In
// intersection mode the vertices of U ∩ V are placed in S up front.
inline SeparatorResult min_separator(const ShapeGraph& h) {
  SeparatorResult result;
  result.disjoint_paths = max_disjoint_paths(h);
  result.q = result.disjoint_paths.size();
  for (const auto& p : result.disjoint_paths) result.path_lengths.push_back(p.size() - 1);

  std::vector<bool> removed(h.t(), false);
  std::size_t chosen = 0;
  for (ShapeVertex v = 0; v < h.t(); ++v) {
    if (h.in_U(v) && h.in_V(v)) {
      removed[v] = true;
      ++chosen;
    }
  }
  for (ShapeVertex v = 0; v < h.t() && chosen < result.q; ++v) {
    if (removed[v]) continue;
    removed[v] = true;
    if (detail::separator_size(h, removed) == result.q - chosen - 1) {
      ++chosen;
    } else {
      removed[v] = false;
    }
  }
  for (ShapeVertex v = 0; v < h.t(); ++v)
    if (removed[v]) result.separator.push_back(v);
  if (result.separator.size() != result.q || detail::separator_size(h, removed) != 0)
    fail(ErrorKind::invalid_argument, "separator construction did not reach the flow value");
  return result;
}

// True when no U-V path avoids `removed` (paths may pass through any vertex).
inline bool separates(const ShapeGraph& h, const std::vector<bool>& removed) {
  std::vector<bool> seen(h.t(), false);
  std::queue<ShapeVertex> queue;
  for (ShapeVertex u : h.U()) {
    if (!removed[u] && !seen[u]) {
      seen[u] = true;
      queue.push(u);
    }
  }
  while (!queue.empty()) {
    const ShapeVertex v = queue.front();
    queue.pop();
    if (h.in_V(v)) return false;
    for (ShapeVertex nb : h.neighbors(v)) {
      if (!removed[nb] && !seen[nb]) {
        seen[nb] = true;
        queue.push(nb);
      }
    }
  }
  return true;
}

// Summary statistics consumed by the bound formulas.
struct ShapeStats {
  std::size_t t = 0, x = 0, y = 0, z = 0, q = 0, r = 0;
  bool bipartite = false;
  bool middle_degree_ok = true;   // every w has degree >= 1
  bool connected_to_uv = true;    // every w reaches U or V
};

inline bool every_middle_reaches_uv(const ShapeGraph& h) {
  std::vector<bool> seen(h.t(), false);
  std::queue<ShapeVertex> queue;
  auto push = [&](ShapeVertex v) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push(v);
    }
  };
  for (ShapeVertex u : h.U()) push(u);
  for (ShapeVertex v : h.V()) push(v);
  while (!queue.empty()) {
    const ShapeVertex v = queue.front();
    queue.pop();
    for (ShapeVertex nb : h.neighbors(v)) push(nb);
  }
  return std::all_of(h.W().begin(), h.W().end(), [&](ShapeVertex w) { return seen[w]; });
}

inline ShapeStats analyze(const ShapeGraph& h) {
  ShapeStats s;
  s.t = h.t();
  s.x = h.x();
  s.y = h.y();
  s.z = h.z();
  s.r = h.r();
  s.q = min_separator(h).q;
  s.bipartite = h.is_uv_bipartite();
  s.middle_degree_ok =
      std::all_of(h.W().begin(), h.W().end(), [&](ShapeVertex w) { return !h.neighbors(w).empty(); });
  s.connected_to_uv = every_middle_reaches_uv(h);
  return s;
}

}  // namespace graphmat
