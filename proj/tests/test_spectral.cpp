#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphmat/jacobi_svd.hpp"
#include "graphmat/spectral.hpp"

using namespace graphmat;

namespace {

DenseMatrix<std::int64_t> random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo = -5,
                                            int hi = 5) {
  DenseMatrix<std::int64_t> m(rows, cols);
  std::uniform_int_distribution<int> d(lo, hi);
  for (auto& v : m.data()) v = d(rng);
  return m;
}

BigInt naive_trace(const DenseMatrix<std::int64_t>& m, std::size_t k) {
  // G = M M^T, then tr(G^k) by repeated multiplication in BigInt
  const std::size_t r = m.rows();
  std::vector<BigInt> g(r * r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < m.cols(); ++c) g[i * r + j] += BigInt(m(i, c)) * m(j, c);
  std::vector<BigInt> p = g;
  for (std::size_t s = 1; s < k; ++s) {
    std::vector<BigInt> q(r * r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t l = 0; l < r; ++l)
        for (std::size_t j = 0; j < r; ++j) q[i * r + j] += p[i * r + l] * g[l * r + j];
    p = std::move(q);
  }
  BigInt tr = 0;
  for (std::size_t i = 0; i < r; ++i) tr += p[i * r + i];
  return tr;
}

}  // namespace

TEST(OperatorNorm, ZeroMatrix) {
  const DenseMatrix<double> z(4, 6, 0.0);
  const auto est = power_norm(z);
  EXPECT_EQ(est.value, 0.0);
  EXPECT_TRUE(est.converged);
}

TEST(OperatorNorm, AllOnes) {
  for (std::size_t m : {1u, 3u, 10u}) {
    const DenseMatrix<double> ones(m, m, 1.0);
    EXPECT_NEAR(power_norm(ones).value, static_cast<double>(m), 1e-6 * m);
  }
}

TEST(OperatorNorm, MatchesSingularValueOracle) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = random_int_matrix(rng, 5, 5);
    PowerOptions opts;
    opts.tol = 1e-14;
    opts.max_iter = 100000;
    opts.seed = rep;
    const double est = power_norm(m.cast<double>(), opts).value;
    const double exact = exact_norm(m).value;
    EXPECT_NEAR(est, exact, 1e-6 * exact);
    EXPECT_LE(est, exact * (1 + 1e-12));
  }
}

TEST(OperatorNorm, RectangularAndTransposeAgree) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = random_int_matrix(rng, 4, 9);
    PowerOptions opts;
    opts.tol = 1e-13;
    opts.max_iter = 100000;
    const double a = power_norm(m.cast<double>(), opts).value;
    const double b = power_norm(m.transpose().cast<double>(), opts).value;
    EXPECT_NEAR(a, b, 1e-6 * a);
  }
}

TEST(OperatorNorm, NonConvergenceIsReported) {
  std::mt19937_64 rng(4);
  const auto m = random_int_matrix(rng, 12, 12);
  PowerOptions opts;
  opts.tol = 1e-15;
  opts.max_iter = 2;
  const auto est = power_norm(m.cast<double>(), opts);
  EXPECT_FALSE(est.converged);
  EXPECT_EQ(est.iterations, 2u);
}

TEST(OperatorNorm, RejectsBadTolerance) {
  PowerOptions opts;
  opts.tol = 0;
  EXPECT_THROW(power_norm(DenseMatrix<double>(2, 2, 1.0), opts), Error);
}

TEST(OperatorNorm, GraphMatrixExplicitAndMatrixFreeAgree) {
  const auto g = InputGraph::sample(40, 5);
  const GraphMatrix m(shapes::path3(), g);
  PowerOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 20000;
  const auto a = operator_norm(m, opts);
  const auto b = operator_norm(m, opts, 0);
  EXPECT_TRUE(a.explicit_matrix);
  EXPECT_FALSE(b.explicit_matrix);
  EXPECT_NEAR(a.value, b.value, 1e-9 * a.value);
  EXPECT_NEAR(a.value, exact_norm(m.build_explicit()).value, 1e-5 * a.value);
}

TEST(OperatorNorm, WignerScale) {
  const auto g = InputGraph::sample(400, 1);
  const auto est = operator_norm(GraphMatrix(shapes::single_edge(), g));
  EXPECT_GT(est.value, 1.7 * 20);
  EXPECT_LT(est.value, 2.3 * 20);
}

TEST(Frobenius, ZeroAndSingleEdge) {
  EXPECT_EQ(frobenius_norm(DenseMatrix<std::int64_t>(3, 3, 0)), 0.0);
  const auto g = InputGraph::sample(11, 3);
  const GraphMatrix m(shapes::single_edge(), g);
  EXPECT_EQ(frobenius_squared(m), BigInt(110));
  EXPECT_EQ(frobenius_squared(m.build_explicit()), BigInt(110));
  EXPECT_DOUBLE_EQ(frobenius_norm(m), std::sqrt(110.0));
}

TEST(Frobenius, DominatesOperatorNorm) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    const auto m = random_int_matrix(rng, 1 + rng() % 8, 1 + rng() % 8);
    EXPECT_LE(exact_norm(m).value, frobenius_norm(m) * (1 + 1e-12));
  }
}

TEST(TraceMoment, SingleEdgeFirstMoment) {
  for (std::size_t n : {2u, 5u, 9u}) {
    const auto g = InputGraph::sample(n, n);
    const GraphMatrix m(shapes::single_edge(), g);
    EXPECT_EQ(trace_moment(m.build_explicit(), 1), BigInt(n * (n - 1)));
    EXPECT_EQ(trace_moment(m, 1), BigInt(n * (n - 1)));
  }
}

TEST(TraceMoment, ZeroMatrix) {
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(trace_moment(DenseMatrix<std::int64_t>(3, 5, 0), k), 0);
}

TEST(TraceMoment, MatchesNaiveProducts) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = random_int_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_EQ(trace_moment(m, k), naive_trace(m, k));
  }
}

TEST(TraceMoment, BigIntegerFallback) {
  // entries near 2^40 overflow 128 bits at k = 4
  DenseMatrix<std::int64_t> m(3, 3, std::int64_t{1} << 40);
  m(1, 2) = -(std::int64_t{1} << 40) + 3;
  EXPECT_EQ(trace_moment(m, 4), naive_trace(m, 4));
}

TEST(TraceMoment, MatchesSingularValues) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = random_int_matrix(rng, 4, 4);
    const long double exact = to_double(trace_moment(m, 3));
    const long double sv = trace_moment_from_singular_values(m, 3);
    EXPECT_NEAR(static_cast<double>(sv), static_cast<double>(exact), 1e-9 * static_cast<double>(exact));
  }
}

TEST(TraceMoment, GraphMatrixPathsAgree) {
  const auto g = InputGraph::sample(8, 13);
  for (const auto& h : {shapes::single_edge(), shapes::path3(), shapes::figure_3a()}) {
    const GraphMatrix m(h, g);
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(trace_moment(m, k), trace_moment(m.build_explicit(), k));
  }
}

TEST(MomentInequality, DominatesNormAndDecreases) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    const auto m = random_int_matrix(rng, 1 + rng() % 16, 1 + rng() % 16);
    const double smax = exact_norm(m).value;
    double prev = INFINITY;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double root = std::pow(to_double(trace_moment(m, k)), 1.0 / (2.0 * k));
      EXPECT_GE(root, smax - 1e-9);
      EXPECT_LE(root, prev + 1e-9);
      prev = root;
    }
  }
}

TEST(SingularValues, KnownDiagonal) {
  DenseMatrix<double> m(3, 2, 0.0);
  m(0, 0) = -3;
  m(2, 1) = 4;
  const auto sv = singular_values(m);
  ASSERT_EQ(sv.size(), 2u);
  EXPECT_NEAR(sv[0], 4.0, 1e-12);
  EXPECT_NEAR(sv[1], 3.0, 1e-12);
}

TEST(InnerProduct, SelfIsFrobeniusSquared) {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    const auto m = random_int_matrix(rng, 1 + rng() % 7, 1 + rng() % 7);
    EXPECT_EQ(matrix_inner_product(m, m), frobenius_squared(m));
    EXPECT_EQ(matrix_inner_product(m, DenseMatrix<std::int64_t>(m.rows(), m.cols(), 0)), 0);
  }
  EXPECT_THROW(matrix_inner_product(DenseMatrix<std::int64_t>(2, 2), DenseMatrix<std::int64_t>(2, 3)), Error);
}
