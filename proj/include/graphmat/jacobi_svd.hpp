#pragma once

// One-sided Jacobi singular values. Independent of the power-iteration path;
// used as a reference on small dense matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "graphmat/dense.hpp"
#include "graphmat/error.hpp"

namespace graphmat {

// Singular values in descending order.
template <class T>
std::vector<double> singular_values(const DenseMatrix<T>& input, double tol = 1e-12, std::size_t max_sweeps = 100) {
  const bool wide = input.cols() > input.rows();
  const std::size_t m = wide ? input.cols() : input.rows();
  const std::size_t n = wide ? input.rows() : input.cols();
  require(m <= 256, ErrorKind::cap_exceeded, "Jacobi reference limited to dimension 256");
  // Column-major working copy of the tall orientation.
  std::vector<long double> a(m * n);
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j) {
      const auto value = static_cast<long double>(input(i, j));
      if (wide)
        a[i * m + j] = value;
      else
        a[j * m + i] = value;
    }
  auto col = [&](std::size_t j) { return a.data() + j * m; };
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        long double alpha = 0, beta = 0, gamma = 0;
        const long double* cp = col(p);
        const long double* cq = col(q);
        for (std::size_t i = 0; i < m; ++i) {
          alpha += cp[i] * cp[i];
          beta += cq[i] * cq[i];
          gamma += cp[i] * cq[i];
        }
        if (gamma == 0 || std::fabs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const long double zeta = (beta - alpha) / (2 * gamma);
        const long double t = (zeta >= 0 ? 1.0L : -1.0L) / (std::fabs(zeta) + std::sqrt(1 + zeta * zeta));
        const long double c = 1 / std::sqrt(1 + t * t);
        const long double s = c * t;
        long double* wp = col(p);
        long double* wq = col(q);
        for (std::size_t i = 0; i < m; ++i) {
          const long double x = wp[i];
          const long double y = wq[i];
          wp[i] = c * x - s * y;
          wq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double norm2 = 0;
    for (std::size_t i = 0; i < m; ++i) norm2 += col(j)[i] * col(j)[i];
    sigma[j] = static_cast<double>(std::sqrt(norm2));
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

}  // namespace graphmat
