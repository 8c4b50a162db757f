#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "graphmat/error.hpp"

namespace graphmat {

// Anything that can multiply a vector and its transpose.
template <class Op>
concept LinearOperator = requires(const Op& op, std::span<const double> in, std::span<double> out) {
  { op.rows() } -> std::convertible_to<std::size_t>;
  { op.cols() } -> std::convertible_to<std::size_t>;
  op.apply(in, out);
  op.apply_transpose(in, out);
};

template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }
  [[nodiscard]] std::vector<T>& data() noexcept { return data_; }

  // out = M * in, each output accumulated in column order.
  template <class U>
  void apply(std::span<const U> in, std::span<U> out) const {
    require(in.size() == cols_ && out.size() == rows_, ErrorKind::dimension_mismatch, "matvec size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) {
      U acc{};
      const T* row = data_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<U>(row[j]) * in[j];
      out[i] = acc;
    }
  }

  // out = M^T * in, each output accumulated in row order.
  template <class U>
  void apply_transpose(std::span<const U> in, std::span<U> out) const {
    require(in.size() == rows_ && out.size() == cols_, ErrorKind::dimension_mismatch, "matvec size mismatch");
    std::fill(out.begin(), out.end(), U{});
    for (std::size_t i = 0; i < rows_; ++i) {
      const T* row = data_.data() + i * cols_;
      const U scale = in[i];
      for (std::size_t j = 0; j < cols_; ++j) out[j] += static_cast<U>(row[j]) * scale;
    }
  }

  void apply(std::span<const double> in, std::span<double> out) const { apply<double>(in, out); }
  void apply_transpose(std::span<const double> in, std::span<double> out) const { apply_transpose<double>(in, out); }

  [[nodiscard]] DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U>
  [[nodiscard]] DenseMatrix<U> cast() const {
    DenseMatrix<U> out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data()[k] = static_cast<U>(data_[k]);
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace graphmat
