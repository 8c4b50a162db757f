#pragma once

// Colexicographic ranking of k-subsets of {0..n-1}:
// rank({c_0 < ... < c_{k-1}}) = sum_i C(c_i, i + 1).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "graphmat/error.hpp"

namespace graphmat {

using Subset = std::vector<std::size_t>;

// C(n, k), saturating at the maximum uint64 value.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

// Advances the increasing tuple s over {0..n-1} to its colex successor;
// returns false after the last one.
inline bool next_combination(Subset& s, std::size_t n) noexcept {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t limit = (i + 1 < k) ? s[i + 1] : n;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  return false;
}

class SubsetIndex {
 public:
  SubsetIndex() = default;

  SubsetIndex(std::size_t n, std::size_t k) : n_(n), k_(k), table_((n + 1) * (k + 1), 0) {
    for (std::size_t m = 0; m <= n; ++m)
      for (std::size_t j = 0; j <= k; ++j) table_[m * (k + 1) + j] = binomial(m, j);
    size_ = binomial(n, k);
    require(size_ != std::numeric_limits<std::uint64_t>::max(), ErrorKind::overflow, "subset count overflows");
  }

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] std::uint64_t size() const noexcept { return size_; }

  [[nodiscard]] std::uint64_t rank(const Subset& s) const {
    require(s.size() == k_, ErrorKind::invalid_argument, "subset has the wrong size");
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      require(s[i] < n_ && (i == 0 || s[i - 1] < s[i]), ErrorKind::invalid_argument,
              "subset must be strictly increasing and within range");
      r += choose(s[i], i + 1);
    }
    return r;
  }

  [[nodiscard]] Subset unrank(std::uint64_t r) const {
    Subset s(k_);
    unrank_into(r, s);
    return s;
  }

  void unrank_into(std::uint64_t r, Subset& s) const {
    require(r < size_, ErrorKind::invalid_argument, "rank out of range");
    s.resize(k_);
    std::size_t top = n_;
    for (std::size_t i = k_; i-- > 0;) {
      // largest c < top with C(c, i + 1) <= r
      std::size_t lo = i, hi = top - 1;
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (choose(mid, i + 1) <= r)
          lo = mid;
        else
          hi = mid - 1;
      }
      const std::size_t c = lo;
      s[i] = c;
      r -= choose(c, i + 1);
      top = c;
    }
  }

  // Advances s to its colex successor; returns false after the last subset.
  [[nodiscard]] bool next(Subset& s) const noexcept { return next_combination(s, n_); }

  [[nodiscard]] Subset first() const {
    Subset s(k_);
    for (std::size_t i = 0; i < k_; ++i) s[i] = i;
    return s;
  }

 private:
  [[nodiscard]] std::uint64_t choose(std::size_t m, std::size_t j) const noexcept { return table_[m * (k_ + 1) + j]; }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::uint64_t size_ = 1;
  std::vector<std::uint64_t> table_;
};

}  // namespace graphmat
