#pragma once

// Input graphs G ~ G(n, 1/2). Vertices are 0..n-1. The canonical storage is
// the packed strictly-upper triangle; full adjacency rows are kept alongside
// so that a vertex's neighbourhood is a bitset.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <utility>
#include <vector>

#include "graphmat/error.hpp"

namespace graphmat {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed number `index` of `seed`.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index ^ 0x632be59bd9b4e019ULL));
}

using VertexPair = std::pair<std::size_t, std::size_t>;

class InputGraph {
 public:
  InputGraph() = default;

  // Word w of the packed triangle is mix64(seed ^ mix64(w + c)), so any bit can
  // be regenerated from (seed, pair index) alone.
  static InputGraph sample(std::size_t n, std::uint64_t seed) {
    require(n >= 1, ErrorKind::invalid_argument, "input graph needs n >= 1");
    InputGraph g(n, seed);
    for (std::size_t w = 0; w < g.packed_.size(); ++w) g.packed_[w] = mix64(seed ^ mix64(w + 0x2545f4914f6cdd1dULL));
    g.finish();
    return g;
  }

  static InputGraph from_edges(std::size_t n, const std::vector<VertexPair>& edges) {
    require(n >= 1, ErrorKind::invalid_argument, "input graph needs n >= 1");
    InputGraph g(n, 0);
    for (const auto& [i, j] : edges) {
      require(i < n && j < n && i != j, ErrorKind::invalid_argument, "invalid edge in edge list");
      const auto p = g.pair_index(i, j);
      g.packed_[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    g.finish();
    return g;
  }

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::size_t pair_count() const noexcept { return n_ * (n_ - 1) / 2; }
  [[nodiscard]] std::size_t words_per_row() const noexcept { return row_words_; }

  // Index of the unordered pair {i, j} in row-major upper-triangle order.
  [[nodiscard]] std::size_t pair_index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const noexcept {
    return (rows_[i * row_words_ + j / 64] >> (j % 64)) & 1u;
  }

  // +1 / -1 without argument checks; i != j assumed.
  [[nodiscard]] int sign(std::size_t i, std::size_t j) const noexcept { return adjacent(i, j) ? 1 : -1; }

  [[nodiscard]] int edge_variable(std::size_t i, std::size_t j) const {
    require(i < n_ && j < n_, ErrorKind::invalid_argument, "vertex out of range");
    require(i != j, ErrorKind::invalid_argument, "edge variable of a self-loop");
    return sign(i, j);
  }

  [[nodiscard]] const std::uint64_t* row(std::size_t i) const noexcept { return rows_.data() + i * row_words_; }

  [[nodiscard]] std::size_t edge_count() const noexcept {
    std::size_t count = 0;
    for (auto word : packed_) count += static_cast<std::size_t>(std::popcount(word));
    return count;
  }

  [[nodiscard]] double density() const noexcept {
    return pair_count() == 0 ? 0.0 : static_cast<double>(edge_count()) / static_cast<double>(pair_count());
  }

  // Graph with edge {sigma(i), sigma(j)} for every edge {i, j}.
  [[nodiscard]] InputGraph relabeled(const std::vector<std::size_t>& sigma) const {
    require(sigma.size() == n_, ErrorKind::invalid_argument, "permutation has the wrong length");
    std::vector<bool> hit(n_, false);
    for (auto s : sigma) {
      require(s < n_ && !hit[s], ErrorKind::invalid_argument, "not a permutation");
      hit[s] = true;
    }
    std::vector<VertexPair> edges;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (adjacent(i, j)) edges.emplace_back(sigma[i], sigma[j]);
    InputGraph g = from_edges(n_, edges);
    g.seed_ = seed_;
    return g;
  }

  // 8-byte little-endian n, then the upper-triangle bits in pair-index order,
  // least significant bit first within each byte.
  void dump(std::ostream& out) const {
    for (int b = 0; b < 8; ++b) out.put(static_cast<char>((static_cast<std::uint64_t>(n_) >> (8 * b)) & 0xffu));
    const std::size_t bytes = (pair_count() + 7) / 8;
    for (std::size_t k = 0; k < bytes; ++k) out.put(static_cast<char>((packed_[k / 8] >> (8 * (k % 8))) & 0xffu));
    require(static_cast<bool>(out), ErrorKind::io, "failed to write graph dump");
  }

  static InputGraph load(std::istream& in) {
    std::uint64_t n = 0;
    for (int b = 0; b < 8; ++b) {
      const int c = in.get();
      require(c != std::char_traits<char>::eof(), ErrorKind::malformed_document, "truncated graph header");
      n |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
    }
    require(n >= 1 && n <= (1u << 20), ErrorKind::malformed_document, "graph header has an invalid n");
    InputGraph g(static_cast<std::size_t>(n), 0);
    const std::size_t bytes = (g.pair_count() + 7) / 8;
    for (std::size_t k = 0; k < bytes; ++k) {
      const int c = in.get();
      require(c != std::char_traits<char>::eof(), ErrorKind::malformed_document, "truncated graph body");
      g.packed_[k / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * (k % 8));
    }
    g.finish();
    return g;
  }

  friend bool operator==(const InputGraph& a, const InputGraph& b) { return a.n_ == b.n_ && a.packed_ == b.packed_; }

 private:
  InputGraph(std::size_t n, std::uint64_t seed)
      : n_(n), seed_(seed), row_words_((n + 63) / 64), packed_((n * (n - 1) / 2 + 63) / 64, 0) {}

  void finish() {
    const std::size_t used = pair_count() % 64;
    if (used != 0) packed_.back() &= (std::uint64_t{1} << used) - 1;
    rows_.assign(n_ * row_words_, 0);
    std::size_t p = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j, ++p) {
        if ((packed_[p / 64] >> (p % 64)) & 1u) {
          rows_[i * row_words_ + j / 64] |= std::uint64_t{1} << (j % 64);
          rows_[j * row_words_ + i / 64] |= std::uint64_t{1} << (i % 64);
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> packed_;
  std::vector<std::uint64_t> rows_;
};

// Product of edge variables over the listed pairs.
inline int chi(const InputGraph& g, const std::vector<VertexPair>& pairs) {
  int value = 1;
  for (const auto& [i, j] : pairs) value *= g.edge_variable(i, j);
  return value;
}

}  // namespace graphmat
