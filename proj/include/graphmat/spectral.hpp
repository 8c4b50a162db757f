#pragma once

// Operator norm by power iteration, Frobenius norms and trace moments
// tr((M M^T)^k).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphmat/dense.hpp"
#include "graphmat/error.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/jacobi_svd.hpp"
#include "graphmat/rgraph.hpp"

namespace graphmat {

using BigInt = boost::multiprecision::cpp_int;

enum class NormMethod { power_iteration, exact_singular_values };

inline const char* to_string(NormMethod m) {
  return m == NormMethod::power_iteration ? "power-iteration" : "exact-singular-values";
}

struct SpectralEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::power_iteration;
  std::size_t iterations = 0;
  double residual = 0.0;  // relative change of the Rayleigh quotient at the last step
  bool converged = false;
  bool explicit_matrix = false;
};

struct PowerOptions {
  double tol = 1e-6;
  std::size_t max_iter = 0;  // 0: 10*log2(dim) + 500
  std::uint64_t seed = 0;
};

inline std::size_t default_max_iter(std::size_t dim) {
  return static_cast<std::size_t>(10.0 * std::log2(static_cast<double>(std::max<std::size_t>(dim, 2)))) + 500;
}

// Power iteration on M M^T (or M^T M, whichever is smaller) from a seeded
// start; reports sqrt of the final Rayleigh quotient.
template <LinearOperator Op>
SpectralEstimate power_norm(const Op& op, const PowerOptions& options = {}) {
  require(options.tol > 0, ErrorKind::invalid_argument, "tolerance must be positive");
  SpectralEstimate est;
  const std::size_t rows = op.rows(), cols = op.cols();
  if (rows == 0 || cols == 0) {
    est.converged = true;
    return est;
  }
  const bool on_rows = rows <= cols;
  const std::size_t dim = on_rows ? rows : cols;
  const std::size_t other = on_rows ? cols : rows;
  const std::size_t max_iter = options.max_iter == 0 ? default_max_iter(dim) : options.max_iter;
  require(max_iter >= 1, ErrorKind::invalid_argument, "max_iter must be at least 1");

  std::vector<double> v(dim), mid(other), next(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t bits = derive_seed(options.seed, i);
    v[i] = static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  auto norm = [](const std::vector<double>& x) {
    long double s = 0;
    for (double e : x) s += static_cast<long double>(e) * e;
    return static_cast<double>(std::sqrt(s));
  };
  auto step = [&] {
    if (on_rows) {
      op.apply_transpose(std::span<const double>(v), std::span<double>(mid));
      op.apply(std::span<const double>(mid), std::span<double>(next));
    } else {
      op.apply(std::span<const double>(v), std::span<double>(mid));
      op.apply_transpose(std::span<const double>(mid), std::span<double>(next));
    }
  };
  double scale = norm(v);
  for (double& e : v) e /= scale;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    step();
    long double dot = 0;
    for (std::size_t i = 0; i < dim; ++i) dot += static_cast<long double>(v[i]) * next[i];
    const double updated = static_cast<double>(dot);
    const double length = norm(next);
    est.iterations = it;
    if (length == 0.0) {
      lambda = 0.0;
      est.residual = 0.0;
      est.converged = true;
      break;
    }
    est.residual = it == 1 ? 1.0 : std::fabs(updated - lambda) / std::max(updated, 1e-300);
    lambda = updated;
    for (std::size_t i = 0; i < dim; ++i) v[i] = next[i] / length;
    if (it > 1 && est.residual < options.tol) {
      est.converged = true;
      break;
    }
  }
  est.value = std::sqrt(std::max(lambda, 0.0));
  return est;
}

// Uses the explicit matrix when it fits under the cap, otherwise the
// matrix-free operator.
inline SpectralEstimate operator_norm(const GraphMatrix& m, const PowerOptions& options = {},
                                      std::uint64_t cap_entries = default_cap_entries()) {
  if (m.entry_count() <= cap_entries) {
    const auto dense = m.build_explicit(cap_entries).cast<double>();
    auto est = power_norm(dense, options);
    est.explicit_matrix = true;
    return est;
  }
  return power_norm(m, options);
}

// Largest singular value from the Jacobi reference.
template <class T>
SpectralEstimate exact_norm(const DenseMatrix<T>& m) {
  SpectralEstimate est;
  est.method = NormMethod::exact_singular_values;
  est.explicit_matrix = true;
  est.converged = true;
  const auto sigma = singular_values(m);
  est.value = sigma.empty() ? 0.0 : sigma.front();
  return est;
}

template <class T>
BigInt frobenius_squared(const DenseMatrix<T>& m) {
  BigInt sum = 0;
  for (const T& e : m.data()) sum += BigInt(e) * BigInt(e);
  return sum;
}

inline BigInt frobenius_squared(const GraphMatrix& m) {
  BigInt sum = 0;
  for (std::uint64_t r = 0; r < m.rows(); ++r) {
    const Subset A = m.row_index().unrank(r);
    m.for_each_compatible_column(A, [&](const Subset& B, std::uint64_t) {
      const std::int64_t e = m.entry(A, B);
      sum += BigInt(e) * e;
    });
  }
  return sum;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

template <class M>
double frobenius_norm(const M& m) {
  return std::sqrt(to_double(frobenius_squared(m)));
}

// Sum of entrywise products.
template <class T>
BigInt matrix_inner_product(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::dimension_mismatch,
          "inner product needs equal dimensions");
  BigInt sum = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k) sum += BigInt(a.data()[k]) * BigInt(b.data()[k]);
  return sum;
}

namespace detail {

using Wide = __int128;

inline bool wide_mul_add(Wide& acc, Wide a, Wide b) {
  Wide p;
  if (__builtin_mul_overflow(a, b, &p)) return false;
  return !__builtin_add_overflow(acc, p, &acc);
}

inline BigInt to_big(Wide x) {
  const bool negative = x < 0;
  unsigned __int128 m = negative ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  BigInt out = static_cast<std::uint64_t>(m >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(m);
  return negative ? BigInt(-out) : out;
}

// Accumulators: __int128 with overflow detection, or BigInt.
inline bool mul_add(Wide& acc, const Wide& a, const Wide& b) { return wide_mul_add(acc, a, b); }
inline bool mul_add(BigInt& acc, const BigInt& a, const BigInt& b) {
  acc += a * b;
  return true;
}

// tr(G^k) for G the smaller Gram matrix of m; false on overflow.
template <class Acc>
bool trace_power(const DenseMatrix<std::int64_t>& m, std::size_t k, Acc& result) {
  const bool rows_side = m.rows() <= m.cols();
  const std::size_t dim = rows_side ? m.rows() : m.cols();
  const std::size_t inner = rows_side ? m.cols() : m.rows();
  auto at = [&](std::size_t i, std::size_t l) { return rows_side ? m(i, l) : m(l, i); };
  std::vector<Acc> g(dim * dim, Acc(0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      Acc s = 0;
      for (std::size_t l = 0; l < inner; ++l) {
        const std::int64_t a = at(i, l), b = at(j, l);
        if (a != 0 && b != 0 && !mul_add(s, Acc(a), Acc(b))) return false;
      }
      g[i * dim + j] = s;
      g[j * dim + i] = s;
    }
  if (k == 1) {
    Acc t = 0;
    for (std::size_t i = 0; i < dim; ++i)
      if (!mul_add(t, g[i * dim + i], Acc(1))) return false;
    result = t;
    return true;
  }
  auto multiply = [&](const std::vector<Acc>& x, const std::vector<Acc>& y, std::vector<Acc>& z) {
    z.assign(dim * dim, Acc(0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t l = 0; l < dim; ++l) {
        if (x[i * dim + l] == 0) continue;
        for (std::size_t j = 0; j < dim; ++j)
          if (!mul_add(z[i * dim + j], x[i * dim + l], y[l * dim + j])) return false;
      }
    return true;
  };
  // tr(G^k) = sum_ij (G^a)_ij (G^b)_ji with a + b = k.
  const std::size_t a = k / 2, b = k - a;
  std::vector<Acc> pa = g, tmp;
  for (std::size_t s = 1; s < a; ++s) {
    if (!multiply(pa, g, tmp)) return false;
    pa.swap(tmp);
  }
  std::vector<Acc> pb;
  if (a == b) {
    pb = pa;
  } else if (!multiply(pa, g, pb)) {
    return false;
  }
  Acc t = 0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (!mul_add(t, pa[i * dim + j], pb[j * dim + i])) return false;
  result = t;
  return true;
}

}  // namespace detail

// tr((M M^T)^k), exact.
inline BigInt trace_moment(const DenseMatrix<std::int64_t>& m, std::size_t k) {
  require(k >= 1, ErrorKind::invalid_argument, "trace moment needs k >= 1");
  detail::Wide fast = 0;
  if (detail::trace_power(m, k, fast)) return detail::to_big(fast);
  BigInt exact = 0;
  detail::trace_power(m, k, exact);
  return exact;
}

// tr((M M^T)^k) without materializing M: applies (M M^T)^k to each standard
// basis vector of the row space in exact arithmetic.
inline BigInt trace_moment(const GraphMatrix& m, std::size_t k) {
  require(k >= 1, ErrorKind::invalid_argument, "trace moment needs k >= 1");
  const GraphMatrix t = m.transposed();
  BigInt total = 0;
  std::vector<BigInt> v(m.rows()), mid(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::fill(v.begin(), v.end(), BigInt(0));
    v[i] = 1;
    for (std::size_t s = 0; s < k; ++s) {
      t.apply<BigInt>(std::span<const BigInt>(v), std::span<BigInt>(mid));
      m.apply<BigInt>(std::span<const BigInt>(mid), std::span<BigInt>(v));
    }
    total += v[i];
  }
  return total;
}

// tr((M M^T)^k) for a real matrix, as a sum of singular-value powers.
template <class T>
long double trace_moment_from_singular_values(const DenseMatrix<T>& m, std::size_t k) {
  long double s = 0;
  for (double sigma : singular_values(m)) s += std::pow(static_cast<long double>(sigma), 2.0L * k);
  return s;
}

}  // namespace graphmat
