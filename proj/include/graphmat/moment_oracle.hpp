#pragma once

// Exact expected trace moments E[tr((R R^T)^k)] by exhaustive enumeration of
// the index blocks A_1, C, B_2, C, A_3, C, ... of the trace expansion. A term
// has expectation 1 when every possible edge of G occurs an even number of
// times among the embedded edges, and 0 otherwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphmat/error.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/index_scheme.hpp"
#include "graphmat/parallel.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000'000;

struct MomentCount {
  std::size_t n = 0;
  std::size_t k = 0;
  ShapeGraph shape;
  bool partition_mode = false;
  BigInt expected_trace = 0;
  BigInt nonzero_terms = 0;
  std::size_t slots = 0;       // b = k (t + z) index slots
  std::size_t constraints = 0; // c = q (k - 1) + z k
  BigInt bound_value = 0;      // C(b, c) n^(b - c) (b - c)^c
  BigInt corollary_bound = 0;  // b^(2c) n^(b - c)
  bool bound_applies = false;  // partition mode, or the single-edge case
};

inline BigInt big_pow(const BigInt& base, std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline BigInt big_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of index slots and minimum constraint count for a shape at moment k.
inline std::pair<std::size_t, std::size_t> slot_and_constraint_counts(const ShapeGraph& h, std::size_t k) {
  const std::size_t q = min_separator(h).q;
  return {k * (h.t() + h.z()), q * (k - 1) + h.z() * k};
}

namespace detail {

struct MomentSearch {
  const ShapeGraph& h;
  std::size_t n;
  std::size_t k;
  std::vector<std::uint64_t> cell;  // per shape vertex, bitmask over input vertices
  std::vector<Subset> row_sets, col_sets;
  std::uint64_t cap;
  std::vector<std::size_t> shared_u;  // per V position
  std::vector<std::uint64_t> pair_bit;

  MomentSearch(const ShapeGraph& shape, std::size_t n_, std::size_t k_, const std::optional<Partition>& part,
               std::uint64_t cap_)
      : h(shape), n(n_), k(k_), cap(cap_) {
    require(n <= 11, ErrorKind::cap_exceeded, "exact moment enumeration supports n <= 11");
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    cell.assign(h.t(), all);
    if (part) {
      require(part->size() == n, ErrorKind::invalid_argument, "partition must label every input vertex");
      std::fill(cell.begin(), cell.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        require((*part)[i] < h.t(), ErrorKind::invalid_argument, "partition label out of range");
        cell[(*part)[i]] |= std::uint64_t{1} << i;
      }
    }
    shared_u.assign(h.y(), EmbeddingPlan::npos);
    for (std::size_t j = 0; j < h.y(); ++j)
      if (h.in_U(h.V()[j])) shared_u[j] = static_cast<std::size_t>(h.u_position(h.V()[j]));
    row_sets = subsets(h.U());
    col_sets = subsets(h.V());
    pair_bit.assign(n * n, 0);
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++p) pair_bit[i * n + j] = pair_bit[j * n + i] = std::uint64_t{1} << p;

    long double estimate = std::pow(static_cast<long double>(row_sets.size()), static_cast<long double>(k)) *
                           std::pow(static_cast<long double>(col_sets.size()), static_cast<long double>(k)) *
                           std::pow(static_cast<long double>(n), static_cast<long double>(2 * k * h.z()));
    require(estimate <= static_cast<long double>(cap), ErrorKind::cap_exceeded,
            "moment enumeration would take about " + std::to_string(static_cast<double>(estimate)) +
                " steps, cap is " + std::to_string(cap));
  }

  // Increasing subsets whose i-th element lies in the cell of list[i].
  std::vector<Subset> subsets(const std::vector<ShapeVertex>& list) const {
    std::vector<Subset> out;
    if (list.size() > n) return out;
    Subset s(list.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    do {
      bool ok = true;
      for (std::size_t i = 0; i < s.size() && ok; ++i) ok = (cell[list[i]] >> s[i]) & 1u;
      if (ok) out.push_back(s);
    } while (next_combination(s, n));
    return out;
  }

  // Calls fn(edge parity mask) for every embedding of one factor R(A, B).
  template <class Fn>
  void for_each_factor(const Subset& A, const Subset& B, Fn&& fn) const {
    std::vector<std::size_t> pi(h.t());
    std::uint64_t used = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      pi[h.U()[i]] = A[i];
      used |= std::uint64_t{1} << A[i];
    }
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (shared_u[j] != EmbeddingPlan::npos) {
        if (A[shared_u[j]] != B[j]) return;
        continue;
      }
      if ((used >> B[j]) & 1u) return;
      pi[h.V()[j]] = B[j];
      used |= std::uint64_t{1} << B[j];
    }
    std::uint64_t mask = 0;
    for (const auto& [a, b] : h.edges())
      if (!h.in_W(a) && !h.in_W(b)) mask ^= pair_bit[pi[a] * n + pi[b]];
    place(0, pi, used, mask, fn);
  }

  template <class Fn>
  void place(std::size_t w, std::vector<std::size_t>& pi, std::uint64_t used, std::uint64_t mask, Fn& fn) const {
    if (w == h.z()) {
      fn(mask);
      return;
    }
    const ShapeVertex vertex = h.W()[w];
    std::uint64_t options = cell[vertex] & ~used;
    while (options != 0) {
      const auto c = static_cast<std::size_t>(__builtin_ctzll(options));
      options &= options - 1;
      std::uint64_t m = mask;
      for (ShapeVertex nb : h.neighbors(vertex))
        if (!h.in_W(nb) || static_cast<std::size_t>(h.w_position(nb)) < w) m ^= pair_bit[c * n + pi[nb]];
      pi[vertex] = c;
      place(w + 1, pi, used | (std::uint64_t{1} << c), m, fn);
    }
  }

  // Factors in trace order: 2m -> (A_m, B_m), 2m+1 -> (A_{m+1 mod k}, B_m).
  std::uint64_t count_from(std::size_t a0) const {
    std::vector<std::size_t> a_choice(k), b_choice(k);
    a_choice[0] = a0;
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, std::size_t factor, std::uint64_t mask) -> void {
      if (factor == 2 * k) {
        if (mask == 0) ++total;
        return;
      }
      const std::size_t m = factor / 2;
      if (factor % 2 == 0) {
        for (std::size_t b = 0; b < col_sets.size(); ++b) {
          b_choice[m] = b;
          for_each_factor(row_sets[a_choice[m]], col_sets[b],
                          [&](std::uint64_t f) { self(self, factor + 1, mask ^ f); });
        }
      } else if (m + 1 < k) {
        for (std::size_t a = 0; a < row_sets.size(); ++a) {
          a_choice[m + 1] = a;
          for_each_factor(row_sets[a], col_sets[b_choice[m]],
                          [&](std::uint64_t f) { self(self, factor + 1, mask ^ f); });
        }
      } else {
        for_each_factor(row_sets[a_choice[0]], col_sets[b_choice[m]],
                        [&](std::uint64_t f) { self(self, factor + 1, mask ^ f); });
      }
    };
    rec(rec, 0, 0);
    return total;
  }
};

}  // namespace detail

// E[tr((R R^T)^k)]; with a partition, of the partitioned matrix.
inline MomentCount expected_trace_moment_exact(const ShapeGraph& h, std::size_t n, std::size_t k,
                                               const std::optional<Partition>& partition = std::nullopt,
                                               unsigned workers = 1,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
  require(k >= 1 && k <= 4, ErrorKind::invalid_argument, "moment order k must be in 1..4");
  require(n >= 1, ErrorKind::invalid_argument, "n must be positive");
  const detail::MomentSearch search(h, n, k, partition, cap);
  std::vector<std::uint64_t> partial(search.row_sets.size(), 0);
  parallel_for(partial.size(), workers, [&](std::size_t a0) { partial[a0] = search.count_from(a0); });

  MomentCount out;
  out.n = n;
  out.k = k;
  out.shape = h;
  out.partition_mode = partition.has_value();
  for (auto p : partial) out.expected_trace += p;
  out.nonzero_terms = out.expected_trace;
  if (h.r() == 0) {
    const auto [b, c] = slot_and_constraint_counts(h, k);
    out.slots = b;
    out.constraints = c;
    out.bound_value = big_binomial(b, c) * big_pow(BigInt(n), b - c) * big_pow(BigInt(b - c), c);
    out.corollary_bound = big_pow(BigInt(b), 2 * c) * big_pow(BigInt(n), b - c);
    const bool single_edge = h.t() == 2 && h.edges().size() == 1 && h.z() == 0;
    out.bound_applies = out.partition_mode || single_edge;
  }
  return out;
}

// Number of index assignments with nonzero expectation. Every such term
// contributes exactly one, so this equals the expected trace.
inline BigInt nonzero_term_count(const ShapeGraph& h, std::size_t n, std::size_t k,
                                 const std::optional<Partition>& partition = std::nullopt, unsigned workers = 1,
                                 std::uint64_t cap = kDefaultEnumerationCap) {
  return expected_trace_moment_exact(h, n, k, partition, workers, cap).nonzero_terms;
}

namespace detail {

// One index slot of the trace expansion: shape vertex `vertex` in factor
// block `block`. A and B blocks are shared by two consecutive factors.
struct Slot {
  ShapeVertex vertex;
  std::size_t block;
};

struct ConstraintSearch {
  const ShapeGraph& h;
  std::size_t k;
  bool partition_mode;
  std::uint64_t cap;
  std::uint64_t steps = 0;

  // Slot ids: A_m[i] -> a_slot(m, i); B_m[j] -> b_slot(m, j); C of factor f
  // at W position w -> c_slot(f, w).
  std::size_t a_slot(std::size_t m, std::size_t i) const { return m * h.x() + i; }
  std::size_t b_slot(std::size_t m, std::size_t j) const { return k * h.x() + m * h.y() + j; }
  std::size_t c_slot(std::size_t f, std::size_t w) const { return k * (h.x() + h.y()) + f * h.z() + w; }
  std::size_t slot_count() const { return k * (h.x() + h.y()) + 2 * k * h.z(); }

  // Slot of shape vertex v in factor f.
  std::size_t slot_of(ShapeVertex v, std::size_t f) const {
    const std::size_t m = f / 2;
    if (h.in_U(v)) return a_slot(f % 2 == 0 ? m : (m + 1) % k, static_cast<std::size_t>(h.u_position(v)));
    if (h.in_V(v)) return b_slot(m, static_cast<std::size_t>(h.v_position(v)));
    return c_slot(f, static_cast<std::size_t>(h.w_position(v)));
  }

  std::vector<ShapeVertex> vertex_of_slot;
  std::vector<std::vector<std::size_t>> factor_slots;  // slots of each factor
  std::vector<std::vector<std::size_t>> factors_of_slot;

  ConstraintSearch(const ShapeGraph& shape, std::size_t k_, bool partition, std::uint64_t cap_)
      : h(shape), k(k_), partition_mode(partition), cap(cap_) {
    vertex_of_slot.assign(slot_count(), 0);
    factor_slots.assign(2 * k, {});
    factors_of_slot.assign(slot_count(), {});
    for (std::size_t f = 0; f < 2 * k; ++f) {
      for (ShapeVertex v = 0; v < h.t(); ++v) {
        const std::size_t s = slot_of(v, f);
        vertex_of_slot[s] = v;
        factor_slots[f].push_back(s);
        factors_of_slot[s].push_back(f);
      }
    }
  }

  // Every embedded edge must occur an even number of times.
  bool even(const std::vector<std::size_t>& label) const {
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t f = 0; f < 2 * k; ++f) {
      for (const auto& [a, b] : h.edges()) {
        std::size_t la = label[slot_of(a, f)], lb = label[slot_of(b, f)];
        if (la > lb) std::swap(la, lb);
        seen.emplace_back(la, lb);
      }
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size();) {
      std::size_t j = i;
      while (j < seen.size() && seen[j] == seen[i]) ++j;
      if ((j - i) % 2 == 1) return false;
      i = j;
    }
    return true;
  }

  // Rows and columns are increasing subsets: some order of the labels must
  // make every A and B block increasing.
  bool orderable(const std::vector<std::size_t>& label, std::size_t classes) const {
    std::vector<std::vector<std::size_t>> succ(classes);
    std::vector<std::size_t> indegree(classes, 0);
    auto chain = [&](auto slot_fn, std::size_t blocks, std::size_t width) {
      for (std::size_t m = 0; m < blocks; ++m)
        for (std::size_t i = 0; i + 1 < width; ++i) {
          const std::size_t lo = label[slot_fn(m, i)], hi = label[slot_fn(m, i + 1)];
          succ[lo].push_back(hi);
          ++indegree[hi];
        }
    };
    chain([&](std::size_t m, std::size_t i) { return a_slot(m, i); }, k, h.x());
    chain([&](std::size_t m, std::size_t j) { return b_slot(m, j); }, k, h.y());
    std::vector<std::size_t> ready;
    for (std::size_t c = 0; c < classes; ++c)
      if (indegree[c] == 0) ready.push_back(c);
    std::size_t done = 0;
    while (!ready.empty()) {
      const std::size_t c = ready.back();
      ready.pop_back();
      ++done;
      for (std::size_t d : succ[c])
        if (--indegree[d] == 0) ready.push_back(d);
    }
    return done == classes;
  }

  // Two slots of one factor must carry distinct values.
  bool clashes(const std::vector<std::size_t>& label, std::size_t s) const {
    for (std::size_t f : factors_of_slot[s])
      for (std::size_t other : factor_slots[f])
        if (other != s && other < s && label[other] == label[s]) return true;
    return false;
  }

  std::optional<std::size_t> search() {
    const std::size_t total = slot_count();
    std::optional<std::size_t> best;
    std::vector<std::size_t> label(total, 0);
    // Slots are labelled in index order; in partition mode labels are only
    // shared between copies of the same shape vertex.
    auto rec = [&](auto&& self, std::size_t s, std::size_t classes) -> void {
      require(++steps <= cap, ErrorKind::cap_exceeded, "constraint-edge search exceeded its step cap");
      const std::size_t forced = s - classes;
      if (best && forced >= *best) return;
      if (s == total) {
        if (even(label) && orderable(label, classes)) best = forced;
        return;
      }
      for (std::size_t c = 0; c <= classes; ++c) {
        if (c < classes && partition_mode) {
          // find a representative slot of class c
          std::size_t rep = 0;
          while (label[rep] != c) ++rep;
          if (vertex_of_slot[rep] != vertex_of_slot[s]) continue;
        }
        label[s] = c;
        if (c < classes && clashes(label, s)) continue;
        self(self, s + 1, c == classes ? classes + 1 : classes);
      }
    };
    rec(rec, 0, 0);
    return best;
  }
};

}  // namespace detail

// Minimum over nonzero-expectation index assignments of (slots - distinct
// values). Values are abstract, so this is the minimum for every large n.
inline std::size_t min_constraint_edges(const ShapeGraph& h, std::size_t k, bool partition_mode,
                                        std::uint64_t cap = 200'000'000) {
  require(k >= 1 && k <= 3, ErrorKind::invalid_argument, "constraint search needs k in 1..3");
  require(h.r() == 0, ErrorKind::invalid_argument, "constraint search does not support U ∩ V");
  detail::ConstraintSearch search(h, k, partition_mode, cap);
  const auto best = search.search();
  require(best.has_value(), ErrorKind::invalid_argument, "no index assignment has nonzero expectation");
  return *best;
}

}  // namespace graphmat
