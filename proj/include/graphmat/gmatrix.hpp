#pragma once

// The graph matrix R_H of a shape H over an input graph G, optionally
// restricted so that each shape vertex embeds only into its own cell of a
// vertex partition. Rows are indexed by x-subsets A, columns by y-subsets B,
// both in colex rank order.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphmat/dense.hpp"
#include "graphmat/error.hpp"
#include "graphmat/index_scheme.hpp"
#include "graphmat/parallel.hpp"
#include "graphmat/rgraph.hpp"
#include "graphmat/shape.hpp"

namespace graphmat {

inline constexpr std::uint64_t kDefaultCapEntries = 10'000'000;

// GRAPHMAT_CAP_ENTRIES overrides the default explicit-matrix cap.
inline std::uint64_t default_cap_entries() {
  if (const char* env = std::getenv("GRAPHMAT_CAP_ENTRIES")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return kDefaultCapEntries;
}

// part[i] is the shape vertex whose cell contains input vertex i.
using Partition = std::vector<std::size_t>;

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
inline void clear_bit(Bits& b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

inline bool checked_add(std::int64_t& acc, std::int64_t term) {
  return !__builtin_add_overflow(acc, term, &acc);
}

// Per-shape data reused by every entry evaluation.
struct EmbeddingPlan {
  std::vector<ShapeEdge> fixed_edges;                    // both ends in U ∪ V
  std::vector<std::vector<ShapeVertex>> back_neighbors;  // per W position
  std::vector<ShapeVertex> shared_u;                     // per V position: the U vertex it equals, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit EmbeddingPlan(const ShapeGraph& h) {
    for (const auto& e : h.edges())
      if (!h.in_W(e.first) && !h.in_W(e.second)) fixed_edges.push_back(e);
    back_neighbors.resize(h.z());
    for (std::size_t k = 0; k < h.z(); ++k) {
      for (ShapeVertex nb : h.neighbors(h.W()[k])) {
        if (!h.in_W(nb) || static_cast<std::size_t>(h.w_position(nb)) < k) back_neighbors[k].push_back(nb);
      }
    }
    shared_u.assign(h.y(), npos);
    for (std::size_t j = 0; j < h.y(); ++j)
      if (h.in_U(h.V()[j])) shared_u[j] = static_cast<std::size_t>(h.u_position(h.V()[j]));
  }
};

}  // namespace detail

struct GraphMatrixOptions {
  unsigned workers = 1;
};

class GraphMatrix {
 public:
  using Options = GraphMatrixOptions;

  // `graph` must outlive the operator.
  GraphMatrix(const ShapeGraph& shape, const InputGraph& graph, Options options = {})
      : shape_(std::make_shared<const ShapeGraph>(shape)),
        graph_(&graph),
        plan_(std::make_shared<const detail::EmbeddingPlan>(shape)),
        rows_index_(graph.n(), shape.x()),
        cols_index_(graph.n(), shape.y()),
        options_(options) {
    full_mask_.assign(graph.words_per_row(), ~std::uint64_t{0});
    if (graph.n() % 64 != 0) full_mask_.back() = (std::uint64_t{1} << (graph.n() % 64)) - 1;
  }

  // Shape vertex v may only embed into the input vertices i with part[i] == v.
  static GraphMatrix partitioned(const ShapeGraph& shape, const InputGraph& graph, const Partition& part,
                                 Options options = {}) {
    require(part.size() == graph.n(), ErrorKind::invalid_argument,
            "partition must label all " + std::to_string(graph.n()) + " input vertices");
    std::vector<std::vector<std::size_t>> members(shape.t());
    for (std::size_t i = 0; i < part.size(); ++i) {
      require(part[i] < shape.t(), ErrorKind::invalid_argument, "partition label out of range");
      members[part[i]].push_back(i);
    }
    return with_cells(shape, graph, members, options);
  }

  // Explicit cell per shape vertex; cells may overlap or be empty.
  static GraphMatrix with_cells(const ShapeGraph& shape, const InputGraph& graph,
                                const std::vector<std::vector<std::size_t>>& members, Options options = {}) {
    require(members.size() == shape.t(), ErrorKind::invalid_argument, "need one cell per shape vertex");
    GraphMatrix m(shape, graph, options);
    auto cells = std::make_shared<std::vector<detail::Bits>>(shape.t(), detail::Bits(graph.words_per_row(), 0));
    for (std::size_t v = 0; v < shape.t(); ++v) {
      for (std::size_t i : members[v]) {
        require(i < graph.n(), ErrorKind::invalid_argument, "cell member out of range");
        detail::set_bit((*cells)[v], i);
      }
    }
    m.cells_ = std::move(cells);
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(rows_index_.size()); }
  [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(cols_index_.size()); }
  [[nodiscard]] const ShapeGraph& shape() const noexcept { return *shape_; }
  [[nodiscard]] const InputGraph& graph() const noexcept { return *graph_; }
  [[nodiscard]] const SubsetIndex& row_index() const noexcept { return rows_index_; }
  [[nodiscard]] const SubsetIndex& col_index() const noexcept { return cols_index_; }
  [[nodiscard]] bool is_partitioned() const noexcept { return cells_ != nullptr; }
  [[nodiscard]] std::uint64_t entry_count() const noexcept {
    const unsigned __int128 count = static_cast<unsigned __int128>(rows_index_.size()) * cols_index_.size();
    return count > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(count);
  }

  // Same operator with U and V exchanged: the transpose.
  [[nodiscard]] GraphMatrix transposed() const {
    GraphMatrix t(shape_->swapped(), *graph_, options_);
    t.cells_ = cells_;
    return t;
  }

  // chi over the image of E(H) under u_i -> A[i], v_j -> B[j], w_k -> C[k].
  [[nodiscard]] int chi_embed(const Subset& A, const Subset& B, const std::vector<std::size_t>& C) const {
    const auto& h = *shape_;
    require(C.size() == h.z(), ErrorKind::invalid_argument, "C has the wrong length");
    std::vector<std::size_t> pi = embed_uv(A, B);
    require(!pi.empty() || h.t() == 0, ErrorKind::invalid_argument,
            "A and B are incompatible: a_i = b_j must hold exactly when u_i = v_j");
    for (std::size_t k = 0; k < C.size(); ++k) {
      require(C[k] < graph_->n(), ErrorKind::invalid_argument, "C entry out of range");
      for (std::size_t v = 0; v < h.t(); ++v) {
        const bool placed = !h.in_W(v) || static_cast<std::size_t>(h.w_position(v)) < k;
        require(!(placed && pi[v] == C[k]), ErrorKind::invalid_argument, "C must be distinct and disjoint from A ∪ B");
      }
      pi[h.W()[k]] = C[k];
    }
    int value = 1;
    for (const auto& [a, b] : h.edges()) value *= graph_->sign(pi[a], pi[b]);
    return value;
  }

  // R(A, B); zero when A, B are incompatible or violate the cells.
  [[nodiscard]] std::int64_t entry(const Subset& A, const Subset& B) const {
    validate_subset(A, shape_->x());
    validate_subset(B, shape_->y());
    Scratch scratch(*this);
    return entry_impl(A, B, scratch);
  }

  // Reusable buffers for entry_with; one per thread.
  struct Scratch {
    std::vector<std::size_t> pi;
    detail::Bits used, allowed, parity;
    explicit Scratch(const GraphMatrix& m)
        : pi(m.shape_->t()),
          used(m.graph_->words_per_row(), 0),
          allowed(m.graph_->words_per_row(), 0),
          parity(m.graph_->words_per_row(), 0) {}
  };

  // entry() without argument validation.
  [[nodiscard]] std::int64_t entry_with(const Subset& A, const Subset& B, Scratch& scratch) const {
    return entry_impl(A, B, scratch);
  }

  // Calls fn(B, column rank) for every B that can pair with A: B carries
  // A's values at the shared positions and avoids A elsewhere. Ranks ascend.
  template <class Fn>
  void for_each_compatible_column(const Subset& A, Fn&& fn) const {
    compatible(A, *shape_, cols_index_, std::forward<Fn>(fn));
  }

  [[nodiscard]] DenseMatrix<std::int64_t> build_explicit(std::uint64_t cap_entries = default_cap_entries()) const {
    require(entry_count() <= cap_entries, ErrorKind::cap_exceeded,
            "explicit matrix would have " + std::to_string(entry_count()) + " entries, cap is " +
                std::to_string(cap_entries));
    DenseMatrix<std::int64_t> m(rows(), cols(), 0);
    parallel_for(rows(), options_.workers, [&](std::size_t r) {
      Scratch scratch(*this);
      const Subset A = rows_index_.unrank(r);
      for_each_compatible_column(A, [&](const Subset& B, std::uint64_t c) { m(r, c) = entry_impl(A, B, scratch); });
    });
    return m;
  }

  // out = R * in without materializing R. Rows are independent, so the result
  // does not depend on the worker count and matches DenseMatrix::apply.
  template <class T>
  void apply(std::span<const T> in, std::span<T> out) const {
    require(in.size() == cols() && out.size() == rows(), ErrorKind::dimension_mismatch, "matvec size mismatch");
    parallel_for(rows(), options_.workers, [&](std::size_t r) {
      Scratch scratch(*this);
      const Subset A = rows_index_.unrank(r);
      T acc{};
      for_each_compatible_column(A, [&](const Subset& B, std::uint64_t c) {
        const std::int64_t value = entry_impl(A, B, scratch);
        if (value != 0) acc += static_cast<T>(value) * in[c];
      });
      out[r] = acc;
    });
  }

  template <class T>
  void apply_transpose(std::span<const T> in, std::span<T> out) const {
    transposed().apply<T>(in, out);
  }

  void apply(std::span<const double> in, std::span<double> out) const { apply<double>(in, out); }
  void apply_transpose(std::span<const double> in, std::span<double> out) const { apply_transpose<double>(in, out); }

 private:
  void validate_subset(const Subset& s, std::size_t size) const {
    require(s.size() == size, ErrorKind::invalid_argument, "subset has the wrong size");
    for (std::size_t i = 0; i < s.size(); ++i) {
      require(s[i] < graph_->n(), ErrorKind::invalid_argument, "subset element out of range");
      require(i == 0 || s[i - 1] < s[i], ErrorKind::invalid_argument, "subset must be strictly increasing");
    }
  }

  // pi restricted to U ∪ V, or empty when A and B are incompatible.
  [[nodiscard]] std::vector<std::size_t> embed_uv(const Subset& A, const Subset& B) const {
    validate_subset(A, shape_->x());
    validate_subset(B, shape_->y());
    Scratch scratch(*this);
    if (!place_uv(A, B, scratch)) return {};
    return scratch.pi;
  }

  // Fills pi for U and V and marks used vertices; false when incompatible.
  bool place_uv(const Subset& A, const Subset& B, Scratch& s) const {
    const auto& h = *shape_;
    std::fill(s.used.begin(), s.used.end(), 0);
    for (std::size_t i = 0; i < A.size(); ++i) {
      s.pi[h.U()[i]] = A[i];
      detail::set_bit(s.used, A[i]);
    }
    for (std::size_t j = 0; j < B.size(); ++j) {
      const std::size_t shared = plan_->shared_u[j];
      if (shared != detail::EmbeddingPlan::npos) {
        if (A[shared] != B[j]) return false;
      } else {
        if (detail::test_bit(s.used, B[j])) return false;
        s.pi[h.V()[j]] = B[j];
        detail::set_bit(s.used, B[j]);
      }
    }
    return true;
  }

  std::int64_t entry_impl(const Subset& A, const Subset& B, Scratch& s) const {
    const auto& h = *shape_;
    if (!place_uv(A, B, s)) return 0;
    if (cells_) {
      for (ShapeVertex u : h.U())
        if (!detail::test_bit((*cells_)[u], s.pi[u])) return 0;
      for (ShapeVertex v : h.V())
        if (!detail::test_bit((*cells_)[v], s.pi[v])) return 0;
    }
    int sign = 1;
    for (const auto& [a, b] : plan_->fixed_edges) sign *= graph_->sign(s.pi[a], s.pi[b]);
    if (h.z() == 0) return sign;
    return place_middle(0, sign, s);
  }

  const detail::Bits& cell_of(ShapeVertex v) const { return cells_ ? (*cells_)[v] : full_mask_; }

  std::int64_t place_middle(std::size_t k, int sign, Scratch& s) const {
    const auto& h = *shape_;
    const ShapeVertex w = h.W()[k];
    const auto& cell = cell_of(w);
    const auto& back = plan_->back_neighbors[k];
    const std::size_t words = s.used.size();
    if (k + 1 == h.z()) {
      // Sum over the last middle vertex c of prod_{nb} sign(c, pi[nb]): the
      // product is -1 exactly when c is non-adjacent to an odd number of
      // neighbours, which a XOR of adjacency rows reveals for all c at once.
      std::fill(s.parity.begin(), s.parity.end(), 0);
      for (ShapeVertex nb : back) {
        const std::uint64_t* row = graph_->row(s.pi[nb]);
        for (std::size_t q = 0; q < words; ++q) s.parity[q] ^= row[q];
      }
      const bool odd_degree = back.size() % 2 == 1;
      std::int64_t candidates = 0, negative = 0;
      for (std::size_t q = 0; q < words; ++q) {
        const std::uint64_t allowed = cell[q] & ~s.used[q];
        const std::uint64_t nonadjacent_odd = odd_degree ? ~s.parity[q] : s.parity[q];
        candidates += std::popcount(allowed);
        negative += std::popcount(allowed & nonadjacent_odd);
      }
      return sign * (candidates - 2 * negative);
    }
    std::int64_t total = 0;
    for (std::size_t q = 0; q < words; ++q) {
      std::uint64_t bits = cell[q] & ~s.used[q];
      while (bits != 0) {
        const std::size_t c = q * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        int local = sign;
        for (ShapeVertex nb : back) local *= graph_->sign(c, s.pi[nb]);
        s.pi[w] = c;
        detail::set_bit(s.used, c);
        const std::int64_t part = place_middle(k + 1, local, s);
        detail::clear_bit(s.used, c);
        require(detail::checked_add(total, part), ErrorKind::overflow, "entry sum overflows 64 bits");
      }
    }
    return total;
  }

  // Enumerates the index-set partners of A under `h` (rows -> columns).
  template <class Fn>
  void compatible(const Subset& A, const ShapeGraph& h, const SubsetIndex& index, Fn&& fn) const {
    const std::size_t n = graph_->n();
    const std::size_t y = h.y();
    std::vector<std::size_t> fixed_value(y, detail::EmbeddingPlan::npos);
    std::size_t free_count = 0;
    for (std::size_t j = 0; j < y; ++j) {
      const ShapeVertex v = h.V()[j];
      if (h.in_U(v))
        fixed_value[j] = A[static_cast<std::size_t>(h.u_position(v))];
      else
        ++free_count;
    }
    std::vector<std::size_t> pool;
    pool.reserve(n);
    for (std::size_t i = 0, a = 0; i < n; ++i) {
      while (a < A.size() && A[a] < i) ++a;
      if (a < A.size() && A[a] == i) continue;
      pool.push_back(i);
    }
    if (free_count > pool.size()) return;
    Subset pick(free_count);
    for (std::size_t f = 0; f < free_count; ++f) pick[f] = f;
    Subset B(y);
    do {
      bool ok = true;
      for (std::size_t j = 0, f = 0; j < y; ++j) {
        B[j] = fixed_value[j] != detail::EmbeddingPlan::npos ? fixed_value[j] : pool[pick[f++]];
        if (j > 0 && B[j - 1] >= B[j]) {
          ok = false;
          break;
        }
      }
      if (ok) fn(static_cast<const Subset&>(B), index.rank(B));
    } while (next_combination(pick, pool.size()));
  }

  std::shared_ptr<const ShapeGraph> shape_;
  const InputGraph* graph_;
  std::shared_ptr<const detail::EmbeddingPlan> plan_;
  SubsetIndex rows_index_;
  SubsetIndex cols_index_;
  Options options_;
  detail::Bits full_mask_;
  std::shared_ptr<const std::vector<detail::Bits>> cells_;
};

// sum_k c_k R_{H_k} over a common input graph and common dimensions.
class LinearCombination {
 public:
  void add(double coefficient, GraphMatrix term) {
    if (!terms_.empty())
      require(term.rows() == terms_.front().second.rows() && term.cols() == terms_.front().second.cols(),
              ErrorKind::dimension_mismatch, "terms of a linear combination must share dimensions");
    terms_.emplace_back(coefficient, std::move(term));
  }

  [[nodiscard]] std::size_t rows() const { return terms_.empty() ? 0 : terms_.front().second.rows(); }
  [[nodiscard]] std::size_t cols() const { return terms_.empty() ? 0 : terms_.front().second.cols(); }
  [[nodiscard]] const std::vector<std::pair<double, GraphMatrix>>& terms() const noexcept { return terms_; }

  void apply(std::span<const double> in, std::span<double> out) const { combine(in, out, false); }
  void apply_transpose(std::span<const double> in, std::span<double> out) const { combine(in, out, true); }

  [[nodiscard]] DenseMatrix<double> build_explicit(std::uint64_t cap_entries = default_cap_entries()) const {
    DenseMatrix<double> sum(rows(), cols(), 0.0);
    for (const auto& [c, term] : terms_) {
      const auto m = term.build_explicit(cap_entries);
      for (std::size_t k = 0; k < m.data().size(); ++k) sum.data()[k] += c * static_cast<double>(m.data()[k]);
    }
    return sum;
  }

 private:
  void combine(std::span<const double> in, std::span<double> out, bool transpose) const {
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> part(out.size());
    for (const auto& [c, term] : terms_) {
      if (transpose)
        term.apply_transpose(in, std::span<double>(part));
      else
        term.apply(in, std::span<double>(part));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * part[i];
    }
  }

  std::vector<std::pair<double, GraphMatrix>> terms_;
};

}  // namespace graphmat
