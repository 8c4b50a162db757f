#pragma once

// Test vectors u, v with |u^T R_H v| / (|u| |v|) of order n^((t-q)/2) for
// U-V bipartite shapes, the separator decomposition of a partitioned graph
// matrix into products of a column and a row vector, and sums of entries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphmat/dense.hpp"
#include "graphmat/error.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/index_scheme.hpp"
#include "graphmat/matching.hpp"
#include "graphmat/rgraph.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

using BigInt = boost::multiprecision::cpp_int;

// Nonzero entries as (colex rank, value), ranks ascending.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::uint64_t, std::int64_t>> entries;

  [[nodiscard]] std::size_t support() const noexcept { return entries.size(); }
  [[nodiscard]] double norm() const {
    long double s = 0;
    for (const auto& [_, value] : entries) s += static_cast<long double>(value) * value;
    return static_cast<double>(std::sqrt(s));
  }
  [[nodiscard]] std::vector<double> dense() const {
    std::vector<double> out(dimension, 0.0);
    for (const auto& [rank, value] : entries) out[rank] = static_cast<double>(value);
    return out;
  }
};

struct WitnessConstruction {
  std::vector<ShapeVertex> cover;       // S, ascending
  std::vector<std::size_t> a_targets;   // A_S: images of S ∩ U in U order
  std::vector<std::size_t> b_targets;   // B_S: images of S ∩ V in V order
  std::vector<ShapeEdge> e_left;        // U \ S to S ∩ V
  std::vector<ShapeEdge> e_middle;      // S ∩ U to S ∩ V
  std::vector<ShapeEdge> e_right;       // S ∩ U to V \ S
  SparseVector u;                       // indexed by row subsets A
  SparseVector v;                       // indexed by column subsets B
};

namespace detail {

// Distinct target values spread over [0, n): the i-th of m ordered slots sits
// near the (i+1)/(m+1) quantile so that sorted subsets through it exist.
inline std::size_t quantile_value(std::size_t position, std::size_t count, std::size_t n) {
  return std::min(n - 1, (position + 1) * n / (count + 1));
}

// Increasing subsets of size `positions.size()` with prescribed values at some
// positions and the remaining values drawn from outside `excluded`.
template <class Fn>
void for_each_pinned_subset(std::size_t n, std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& pinned,
                            const std::vector<bool>& excluded, Fn&& fn) {
  std::vector<std::size_t> fixed(size, static_cast<std::size_t>(-1));
  for (const auto& [pos, value] : pinned) fixed[pos] = value;
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i)
    if (!excluded[i]) pool.push_back(i);
  const std::size_t free_count = size - pinned.size();
  if (free_count > pool.size()) return;
  Subset pick(free_count);
  for (std::size_t f = 0; f < free_count; ++f) pick[f] = f;
  Subset s(size);
  do {
    bool ok = true;
    for (std::size_t i = 0, f = 0; i < size && ok; ++i) {
      s[i] = fixed[i] != static_cast<std::size_t>(-1) ? fixed[i] : pool[pick[f++]];
      ok = i == 0 || s[i - 1] < s[i];
    }
    if (ok) fn(static_cast<const Subset&>(s));
  } while (next_combination(pick, pool.size()));
}

}  // namespace detail

// u_A = chi(pi(E_L)) when pi(S ∩ U) = A_S and A avoids B_S; v symmetric.
// Without an explicit cover the König cover is used; without targets, A_S
// and B_S are placed at quantile positions.
inline WitnessConstruction build_witness_bipartite(const InputGraph& g, const ShapeGraph& h,
                                                   std::optional<std::vector<ShapeVertex>> cover = std::nullopt,
                                                   std::optional<std::vector<std::size_t>> a_targets = std::nullopt,
                                                   std::optional<std::vector<std::size_t>> b_targets = std::nullopt) {
  require(h.is_uv_bipartite(), ErrorKind::not_bipartite, "witness construction needs a U-V bipartite shape");
  const std::size_t n = g.n();
  WitnessConstruction w;
  w.cover = cover ? *cover : min_vertex_cover(h).cover;
  std::sort(w.cover.begin(), w.cover.end());
  std::vector<bool> in_s(h.t(), false);
  for (ShapeVertex s : w.cover) {
    require(s < h.t(), ErrorKind::invalid_argument, "cover vertex out of range");
    in_s[s] = true;
  }
  for (const auto& [a, b] : h.edges())
    require(in_s[a] || in_s[b], ErrorKind::invalid_argument, "the given set is not a vertex cover");

  std::vector<std::size_t> su, sv;  // positions in U / V of the cover vertices
  for (std::size_t i = 0; i < h.x(); ++i)
    if (in_s[h.U()[i]]) su.push_back(i);
  for (std::size_t j = 0; j < h.y(); ++j)
    if (in_s[h.V()[j]]) sv.push_back(j);

  std::vector<bool> taken(n, false);
  auto pick_targets = [&](const std::vector<std::size_t>& positions, std::size_t width) {
    std::vector<std::size_t> out;
    for (std::size_t p : positions) {
      std::size_t value = detail::quantile_value(p, width, n);
      std::size_t tries = 0;
      while (taken[value] && tries++ < n) value = (value + 1) % n;
      require(!taken[value], ErrorKind::invalid_argument, "n is too small for the cover targets");
      taken[value] = true;
      out.push_back(value);
    }
    return out;
  };
  if (a_targets) {
    require(a_targets->size() == su.size(), ErrorKind::invalid_argument, "A_S size must equal |S ∩ U|");
    w.a_targets = *a_targets;
    for (auto value : w.a_targets) {
      require(value < n && !taken[value], ErrorKind::invalid_argument, "targets must be distinct and in range");
      taken[value] = true;
    }
  } else {
    w.a_targets = pick_targets(su, h.x());
  }
  if (b_targets) {
    require(b_targets->size() == sv.size(), ErrorKind::invalid_argument, "B_S size must equal |S ∩ V|");
    w.b_targets = *b_targets;
    for (auto value : w.b_targets) {
      require(value < n && !taken[value], ErrorKind::invalid_argument, "A_S and B_S must be disjoint");
      taken[value] = true;
    }
  } else {
    w.b_targets = pick_targets(sv, h.y());
  }

  for (const auto& e : h.edges()) {
    const ShapeVertex u = h.in_U(e.first) ? e.first : e.second;
    const ShapeVertex v = h.in_U(e.first) ? e.second : e.first;
    if (!in_s[u])
      w.e_left.push_back(e);
    else if (in_s[v])
      w.e_middle.push_back(e);
    else
      w.e_right.push_back(e);
  }

  // Images of the cover vertices.
  std::vector<std::size_t> image(h.t(), 0);
  for (std::size_t k = 0; k < su.size(); ++k) image[h.U()[su[k]]] = w.a_targets[k];
  for (std::size_t k = 0; k < sv.size(); ++k) image[h.V()[sv[k]]] = w.b_targets[k];

  const SubsetIndex rows(n, h.x()), cols(n, h.y());
  w.u.dimension = static_cast<std::size_t>(rows.size());
  w.v.dimension = static_cast<std::size_t>(cols.size());

  std::vector<std::pair<std::size_t, std::size_t>> pinned_u, pinned_v;
  for (std::size_t k = 0; k < su.size(); ++k) pinned_u.emplace_back(su[k], w.a_targets[k]);
  for (std::size_t k = 0; k < sv.size(); ++k) pinned_v.emplace_back(sv[k], w.b_targets[k]);
  std::vector<bool> excluded(n, false);
  for (auto value : w.a_targets) excluded[value] = true;
  for (auto value : w.b_targets) excluded[value] = true;

  detail::for_each_pinned_subset(n, h.x(), pinned_u, excluded, [&](const Subset& A) {
    auto pi = image;
    for (std::size_t i = 0; i < h.x(); ++i) pi[h.U()[i]] = A[i];
    int value = 1;
    for (const auto& [a, b] : w.e_left) value *= g.sign(pi[a], pi[b]);
    w.u.entries.emplace_back(rows.rank(A), value);
  });
  detail::for_each_pinned_subset(n, h.y(), pinned_v, excluded, [&](const Subset& B) {
    auto pi = image;
    for (std::size_t j = 0; j < h.y(); ++j) pi[h.V()[j]] = B[j];
    int value = 1;
    for (const auto& [a, b] : w.e_right) value *= g.sign(pi[a], pi[b]);
    w.v.entries.emplace_back(cols.rank(B), value);
  });
  std::sort(w.u.entries.begin(), w.u.entries.end());
  std::sort(w.v.entries.begin(), w.v.entries.end());
  return w;
}

// u^T M v, exact.
inline BigInt rayleigh(const SparseVector& u, const GraphMatrix& m, const SparseVector& v) {
  require(u.dimension == m.rows() && v.dimension == m.cols(), ErrorKind::dimension_mismatch,
          "rayleigh: vector dimensions do not match the matrix");
  GraphMatrix::Scratch scratch(m);
  std::vector<Subset> rows;
  rows.reserve(u.entries.size());
  for (const auto& [ra, _] : u.entries) rows.push_back(m.row_index().unrank(ra));
  std::vector<std::int64_t> row_sum(rows.size(), 0);
  Subset B;
  for (const auto& [rb, vb] : v.entries) {
    m.col_index().unrank_into(rb, B);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::int64_t e = m.entry_with(rows[i], B, scratch);
      if (e != 0)
        require(detail::checked_add(row_sum[i], e * vb), ErrorKind::overflow, "rayleigh row sum overflows");
    }
  }
  BigInt total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) total += BigInt(row_sum[i]) * u.entries[i].second;
  return total;
}

template <class T>
BigInt rayleigh(const std::vector<T>& u, const DenseMatrix<T>& m, const std::vector<T>& v) {
  require(u.size() == m.rows() && v.size() == m.cols(), ErrorKind::dimension_mismatch,
          "rayleigh: vector dimensions do not match the matrix");
  BigInt total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (u[i] == T{}) continue;
    BigInt row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != T{} && v[j] != T{}) row += BigInt(m(i, j)) * BigInt(v[j]);
    total += row * BigInt(u[i]);
  }
  return total;
}

// <R_1, R_2> over a common input graph, summed over the nonzero pattern of R_1.
inline BigInt matrix_inner_product(const GraphMatrix& a, const GraphMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::dimension_mismatch,
          "inner product needs equal dimensions");
  BigInt total = 0;
  for (std::uint64_t r = 0; r < a.rows(); ++r) {
    const Subset A = a.row_index().unrank(r);
    for (std::uint64_t c = 0; c < a.cols(); ++c) {
      const Subset B = a.col_index().unrank(c);
      const std::int64_t x = a.entry(A, B);
      if (x != 0) total += BigInt(x) * b.entry(A, B);
    }
  }
  return total;
}

// Sum of all entries of R_H.
inline BigInt f_sum(const GraphMatrix& m, std::uint64_t cap_entries = default_cap_entries()) {
  require(m.entry_count() <= cap_entries, ErrorKind::cap_exceeded, "f_sum: matrix exceeds the entry cap");
  BigInt total = 0;
  GraphMatrix::Scratch scratch(m);
  for (std::uint64_t r = 0; r < m.rows(); ++r) {
    const Subset A = m.row_index().unrank(r);
    std::int64_t row = 0;
    m.for_each_compatible_column(A, [&](const Subset& B, std::uint64_t) {
      require(detail::checked_add(row, m.entry_with(A, B, scratch)), ErrorKind::overflow, "f_sum row overflows");
    });
    total += row;
  }
  return total;
}

inline BigInt f_sum(const InputGraph& g, const ShapeGraph& h, std::uint64_t cap_entries = default_cap_entries()) {
  return f_sum(GraphMatrix(h, g), cap_entries);
}

struct DecompositionPieces {
  std::vector<ShapeVertex> left;       // L: reachable from U \ S in H - S
  std::vector<ShapeVertex> right;      // every other vertex outside S
  std::vector<ShapeVertex> separator;  // S
  ShapeGraph h_left;                   // U_L = U, V_L = ∅, vertices L ∪ S
  ShapeGraph h_right;                  // U_R = ∅, V_R = V, vertices R ∪ S
  std::vector<ShapeVertex> left_origin;   // H vertex of each H_L vertex
  std::vector<ShapeVertex> right_origin;  // H vertex of each H_R vertex
  std::size_t l = 0, q = 0, r_count = 0;
};

// Splits H along a U-V separator S. Edges incident to L go to H_L; edges
// inside S or incident to R go to H_R.
inline DecompositionPieces decompose_shape(const ShapeGraph& h, const std::vector<ShapeVertex>& separator) {
  require(h.r() == 0, ErrorKind::invalid_argument, "decomposition needs U ∩ V empty");
  std::vector<bool> in_s(h.t(), false);
  for (ShapeVertex s : separator) {
    require(s < h.t() && !in_s[s], ErrorKind::invalid_argument, "separator vertices must be distinct and valid");
    in_s[s] = true;
  }
  require(separates(h, in_s), ErrorKind::invalid_argument, "the given set does not separate U from V");

  DecompositionPieces d;
  std::vector<bool> in_l(h.t(), false);
  std::queue<ShapeVertex> queue;
  for (ShapeVertex u : h.U())
    if (!in_s[u]) {
      in_l[u] = true;
      queue.push(u);
    }
  while (!queue.empty()) {
    const ShapeVertex v = queue.front();
    queue.pop();
    for (ShapeVertex nb : h.neighbors(v))
      if (!in_s[nb] && !in_l[nb]) {
        in_l[nb] = true;
        queue.push(nb);
      }
  }
  for (ShapeVertex v = 0; v < h.t(); ++v) {
    if (in_s[v])
      d.separator.push_back(v);
    else if (in_l[v])
      d.left.push_back(v);
    else
      d.right.push_back(v);
  }
  d.l = d.left.size();
  d.q = d.separator.size();
  d.r_count = d.right.size();

  ShapeOptions aux;
  aux.require_middle_degree = false;
  aux.max_vertices = h.options().max_vertices;

  // H_L: U = U, W = (L \ U) ∪ (S \ U).
  {
    std::vector<std::string> us, ws;
    for (ShapeVertex u : h.U()) {
      us.push_back(h.name(u));
      d.left_origin.push_back(u);
    }
    for (ShapeVertex v : d.left)
      if (!h.in_U(v)) {
        ws.push_back(h.name(v));
        d.left_origin.push_back(v);
      }
    for (ShapeVertex v : d.separator)
      if (!h.in_U(v)) {
        ws.push_back(h.name(v));
        d.left_origin.push_back(v);
      }
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& [a, b] : h.edges())
      if (in_l[a] || in_l[b]) es.emplace_back(h.name(a), h.name(b));
    d.h_left = ShapeGraph::create(us, {}, ws, es, aux);
  }
  // H_R: V = V, W = (R \ V) ∪ (S \ V).
  {
    std::vector<std::string> vs, ws;
    for (ShapeVertex v : h.V()) {
      vs.push_back(h.name(v));
      d.right_origin.push_back(v);
    }
    for (ShapeVertex v : d.right)
      if (!h.in_V(v)) {
        ws.push_back(h.name(v));
        d.right_origin.push_back(v);
      }
    for (ShapeVertex v : d.separator)
      if (!h.in_V(v)) {
        ws.push_back(h.name(v));
        d.right_origin.push_back(v);
      }
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& [a, b] : h.edges())
      if (!in_l[a] && !in_l[b]) es.emplace_back(h.name(a), h.name(b));
    d.h_right = ShapeGraph::create({}, vs, ws, es, aux);
  }
  return d;
}

// Rebuilds R_{H, V_1..V_t} as the sum over separator placements of the
// outer product of the H_L column and the H_R row, and compares it with the
// directly computed partitioned matrix. Returns the largest absolute entry
// difference (0 when the identity holds).
inline std::int64_t verify_decomposition(const ShapeGraph& h, const DecompositionPieces& d, const InputGraph& g,
                                         const Partition& part,
                                         std::uint64_t cap_entries = default_cap_entries()) {
  const auto direct = GraphMatrix::partitioned(h, g, part).build_explicit(cap_entries);
  std::vector<std::vector<std::size_t>> cell(h.t());
  for (std::size_t i = 0; i < part.size(); ++i) cell[part[i]].push_back(i);

  DenseMatrix<std::int64_t> rebuilt(direct.rows(), direct.cols(), 0);
  std::vector<std::size_t> choice(d.separator.size(), 0);
  auto cells_for = [&](const std::vector<ShapeVertex>& origin, const std::vector<std::size_t>& placement) {
    std::vector<std::vector<std::size_t>> members(origin.size());
    for (std::size_t k = 0; k < origin.size(); ++k) {
      const ShapeVertex v = origin[k];
      const auto it = std::find(d.separator.begin(), d.separator.end(), v);
      if (it != d.separator.end())
        members[k] = {placement[static_cast<std::size_t>(it - d.separator.begin())]};
      else
        members[k] = cell[v];
    }
    return members;
  };
  auto rec = [&](auto&& self, std::size_t s, std::vector<std::size_t>& placement) -> void {
    if (s == d.separator.size()) {
      const auto left = GraphMatrix::with_cells(d.h_left, g, cells_for(d.left_origin, placement)).build_explicit(cap_entries);
      const auto right =
          GraphMatrix::with_cells(d.h_right, g, cells_for(d.right_origin, placement)).build_explicit(cap_entries);
      for (std::size_t i = 0; i < rebuilt.rows(); ++i) {
        if (left(i, 0) == 0) continue;
        for (std::size_t j = 0; j < rebuilt.cols(); ++j) rebuilt(i, j) += left(i, 0) * right(0, j);
      }
      return;
    }
    for (std::size_t value : cell[d.separator[s]]) {
      placement[s] = value;
      self(self, s + 1, placement);
    }
  };
  rec(rec, 0, choice);
  std::int64_t worst = 0;
  for (std::size_t k = 0; k < direct.data().size(); ++k)
    worst = std::max(worst, std::abs(direct.data()[k] - rebuilt.data()[k]));
  return worst;
}

}  // namespace graphmat
