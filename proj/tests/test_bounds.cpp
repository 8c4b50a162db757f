#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphmat/bounds.hpp"
#include "graphmat/shape.hpp"

using namespace graphmat;

namespace {

ShapeStats stats(std::size_t t, std::size_t z, std::size_t q, std::size_t r = 0, bool bipartite = false) {
  ShapeStats s;
  s.t = t;
  s.z = z;
  s.q = q;
  s.r = r;
  s.bipartite = bipartite;
  return s;
}

}  // namespace

TEST(NormUpperBound, SingleEdgeExample) {
  const auto rep = norm_upper_bound(shapes::single_edge(), 100, 0.5);
  const long double direct = 2.0L * 4.0L * (2.0L * std::exp(1.0L) * (std::log(1600.0L) / 2.0L + 1.0L)) * 10.0L;
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), static_cast<double>(direct), 1e-9);
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), 2039.31, 0.1);
  EXPECT_EQ(rep.theorem_used, BoundTheorem::bipartite);
  ASSERT_TRUE(rep.general_value && rep.bipartite_value);
  EXPECT_EQ(*rep.general_value, *rep.bipartite_value);
  EXPECT_EQ(rep.lower_scale, 10.0L);
  EXPECT_FALSE(rep.formula_terms.empty());
}

TEST(NormUpperBound, FrobeniusFallback) {
  const auto rep = norm_upper_bound(stats(2, 0, 0), 37, 0.1);
  EXPECT_EQ(rep.theorem_used, BoundTheorem::frobenius_fallback);
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), 37.0, 1e-12);
}

TEST(NormUpperBound, GeneralShape) {
  const auto rep = norm_upper_bound(shapes::figure_1a(), 100, 0.01);
  EXPECT_EQ(rep.theorem_used, BoundTheorem::general);
  EXPECT_EQ(rep.q, 2u);
  EXPECT_EQ(rep.z, 2u);
  EXPECT_FALSE(rep.bipartite_value.has_value());
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), static_cast<double>(general_bound(7, 2, 2, 100, 0.01)),
              1e-9 * static_cast<double>(rep.upper_bound));
}

TEST(NormUpperBound, BipartiteFormulaCoincidesAtZeroMiddle) {
  for (std::size_t t = 1; t <= 10; ++t)
    for (std::size_t q = 1; q <= t; ++q)
      EXPECT_EQ(bipartite_bound(t, q, 1000, 0.05), general_bound(t, 0, q, 1000, 0.05));
}

TEST(NormUpperBound, MonotoneInNAndEpsilon) {
  for (std::size_t t = 2; t <= 6; ++t) {
    for (std::size_t z = 0; z <= 2; ++z) {
      for (std::size_t q = 0; q <= t; ++q) {
        const auto s = stats(t, z, q);
        for (std::size_t n = 2; n <= 4096; n *= 2) {
          EXPECT_LE(norm_upper_bound(s, n, 0.1).upper_bound, norm_upper_bound(s, 2 * n, 0.1).upper_bound);
          EXPECT_LE(norm_upper_bound(s, n, 0.1).upper_bound, norm_upper_bound(s, n, 0.05).upper_bound);
        }
      }
    }
  }
}

TEST(NormUpperBound, AboveLowerScaleWhenPolylogPresent) {
  for (std::size_t t = 1; t <= 8; ++t)
    for (std::size_t z = 0; z <= 3; ++z)
      for (std::size_t q = 0; q <= t; ++q) {
        if (q + z == 0) continue;
        const auto rep = norm_upper_bound(stats(t, z, q), 500, 0.3);
        EXPECT_GE(rep.upper_bound, rep.lower_scale);
      }
}

TEST(NormUpperBound, LargeTStaysFinite) {
  const auto rep = norm_upper_bound(stats(150, 3, 10), 1000, 0.01);
  EXPECT_TRUE(std::isfinite(static_cast<double>(rep.log_upper_bound)));
  EXPECT_GT(rep.log_upper_bound, 150 * std::log(150.0));
}

TEST(NormUpperBound, RejectsEpsilon) {
  EXPECT_THROW(norm_upper_bound(stats(2, 0, 1), 10, 0.0), Error);
  EXPECT_THROW(norm_upper_bound(stats(2, 0, 1), 10, 1.0), Error);
  EXPECT_THROW(warmup_bound(10, -0.1), Error);
}

TEST(IntersectionBound, ReducesToMainFormula) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t t = 1 + rng() % 12, z = rng() % 5, q = rng() % (t + 1);
    const std::size_t n = 2 + rng() % 100000;
    const double eps = 0.001 + 0.998 * static_cast<double>(rng() % 1000) / 1000.0;
    EXPECT_EQ(intersection_bound(t, z, q, 0, n, eps), general_bound(t, z, q, n, eps));
  }
}

TEST(IntersectionBound, SharedPendant) {
  const auto rep = norm_upper_bound(shapes::shared_pendant(), 64, 0.01);
  EXPECT_EQ(rep.theorem_used, BoundTheorem::intersection);
  EXPECT_EQ(rep.r, 1u);
  EXPECT_EQ(rep.t_prime, 1u);
  EXPECT_EQ(rep.q_prime, 0u);
  // 2 * 1^1 * (e * 2 * (ln(8 * 64 / 0.01) / 2 + 1))^1 * 64^(1/2)
  const double expect = 2.0 * std::exp(1.0) * 2.0 * (std::log(8.0 * 64 / 0.01) / 2.0 + 1.0) * 8.0;
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), expect, 1e-9 * expect);
}

TEST(IntersectionBound, FallbackWithoutMiddle) {
  ShapeOptions opts;
  opts.intersection_mode = true;
  const auto h = ShapeGraph::create({"s"}, {"s"}, {}, {}, opts);
  const auto rep = norm_upper_bound(h, 49, 0.1);
  EXPECT_EQ(rep.theorem_used, BoundTheorem::frobenius_fallback);
  EXPECT_NEAR(static_cast<double>(rep.upper_bound), 7.0, 1e-9);
}

TEST(WarmupBound, Examples) {
  EXPECT_NEAR(static_cast<double>(warmup_bound(100, 0.01)), std::exp(1.0) * 10 * (std::log(1e4) + 2), 1e-9);
  EXPECT_NEAR(static_cast<double>(warmup_bound(100, 0.01)), 304.7, 0.05);
  EXPECT_NEAR(static_cast<double>(warmup_bound(1, 0.999999)), 2 * std::exp(1.0), 1e-5);
  for (std::size_t n = 1; n <= 1000000; n *= 10)
    for (double eps : {1e-6, 0.01, 0.5, 0.999999})
      EXPECT_GE(warmup_bound(n, eps), 2 * std::sqrt(static_cast<long double>(n)));
  EXPECT_EQ(warmup_report(100, 0.01).theorem_used, BoundTheorem::warmup);
}

TEST(LowerBoundScale, Examples) {
  EXPECT_NEAR(static_cast<double>(lower_bound_scale(analyze(shapes::single_edge()), 400)), 20.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(lower_bound_scale(analyze(shapes::figure_1a()), 100)), 1e5, 1e-6);
  EXPECT_EQ(lower_bound_scale(analyze(shapes::figure_4a()), 1), 1.0L);
}

TEST(LowerBoundScale, HypothesisViolation) {
  const auto h = ShapeGraph::create({"u1"}, {"v1"}, {"w1", "w2"}, {{"u1", "v1"}, {"w1", "w2"}});
  try {
    (void)lower_bound_scale(analyze(h), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::hypothesis_violated);
  }
}
