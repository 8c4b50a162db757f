#pragma once

// Closed-form norm bounds evaluated from (t, z, q, r), n and epsilon. Values
// are assembled in log space in long double and exponentiated at the end.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphmat/error.hpp"
#include "graphmat/separator.hpp"

namespace graphmat {

enum class BoundTheorem { warmup, bipartite, general, intersection, frobenius_fallback };

inline const char* to_string(BoundTheorem t) {
  switch (t) {
    case BoundTheorem::warmup: return "warmup";
    case BoundTheorem::bipartite: return "bipartite";
    case BoundTheorem::general: return "general";
    case BoundTheorem::intersection: return "intersection";
    case BoundTheorem::frobenius_fallback: return "frobenius_fallback";
  }
  return "unknown";
}

struct NormBoundReport {
  std::size_t t = 0, z = 0, q = 0, r = 0, t_prime = 0, q_prime = 0;
  std::size_t n = 0;
  double epsilon = 0.0;
  long double upper_bound = 0;
  long double log_upper_bound = 0;
  long double lower_scale = 0;
  BoundTheorem theorem_used = BoundTheorem::general;
  std::optional<long double> general_value;    // main formula, when it applies
  std::optional<long double> bipartite_value;  // z = 0 formula, for U-V bipartite shapes
  std::vector<std::pair<std::string, long double>> formula_terms;
};

namespace detail {

inline void check_epsilon(double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorKind::invalid_argument, "epsilon must lie in (0, 1)");
}

struct Evaluated {
  long double log_value;
  std::vector<std::pair<std::string, long double>> terms;
};

// ln of 2 s^s (e m (ln(8 n^p / eps) / (2 d) + 1))^d n^(e2 / 2).
inline Evaluated log_formula(std::size_t s, std::size_t m, std::size_t p, std::size_t d, long double half_exponent,
                             std::size_t n, double epsilon) {
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double log_term = std::log(8.0L) + p * ln_n - std::log(static_cast<long double>(epsilon));
  const long double base = std::exp(1.0L) * m * (log_term / (2.0L * d) + 1.0L);
  Evaluated out;
  const long double ln_ss = s == 0 ? 0.0L : s * std::log(static_cast<long double>(s));
  out.log_value = std::log(2.0L) + ln_ss + d * std::log(base) + half_exponent * ln_n;
  out.terms = {{"constant", 2.0L},
               {"s^s", std::exp(ln_ss)},
               {"log_argument", log_term},
               {"base", base},
               {"exponent", static_cast<long double>(d)},
               {"n_power", std::exp(half_exponent * ln_n)}};
  return out;
}

}  // namespace detail

// 2 t^t (e (t+z) (ln(8 n^q / eps) / (2 (q+z)) + 1))^(q+z) n^((t-q)/2); n^(t/2) when q + z = 0.
inline long double general_bound(std::size_t t, std::size_t z, std::size_t q, std::size_t n, double epsilon) {
  detail::check_epsilon(epsilon);
  if (q + z == 0) return std::pow(static_cast<long double>(n), t / 2.0L);
  return std::exp(detail::log_formula(t, t + z, q, q + z, (static_cast<long double>(t) - q) / 2.0L, n, epsilon).log_value);
}

// 2 t^t (e t (ln(8 n^q / eps) / (2q) + 1))^q n^((t-q)/2); n^(t/2) when q = 0.
inline long double bipartite_bound(std::size_t t, std::size_t q, std::size_t n, double epsilon) {
  detail::check_epsilon(epsilon);
  if (q == 0) return std::pow(static_cast<long double>(n), t / 2.0L);
  return std::exp(detail::log_formula(t, t, q, q, (static_cast<long double>(t) - q) / 2.0L, n, epsilon).log_value);
}

// Shapes with |U ∩ V| = r: t' = t - r, q' = q - r.
inline long double intersection_bound(std::size_t t, std::size_t z, std::size_t q, std::size_t r, std::size_t n,
                                      double epsilon) {
  detail::check_epsilon(epsilon);
  require(r <= q && r <= t, ErrorKind::invalid_argument, "need r <= q and r <= t");
  const std::size_t tp = t - r, qp = q - r;
  if (qp + z == 0) return std::pow(static_cast<long double>(n), t / 2.0L);
  return std::exp(
      detail::log_formula(tp, tp + z, qp + r, qp + z, (static_cast<long double>(tp) - qp) / 2.0L, n, epsilon).log_value);
}

// e sqrt(n) (ln(n / eps) + 2)
inline long double warmup_bound(std::size_t n, double epsilon) {
  detail::check_epsilon(epsilon);
  const long double nn = static_cast<long double>(n);
  return std::exp(1.0L) * std::sqrt(nn) * (std::log(nn / epsilon) + 2.0L);
}

inline NormBoundReport norm_upper_bound(const ShapeStats& s, std::size_t n, double epsilon) {
  detail::check_epsilon(epsilon);
  require(n >= 1, ErrorKind::invalid_argument, "n must be positive");
  require(s.q <= s.t && s.r <= s.q, ErrorKind::invalid_argument, "inconsistent shape statistics");
  NormBoundReport rep;
  rep.t = s.t;
  rep.z = s.z;
  rep.q = s.q;
  rep.r = s.r;
  rep.t_prime = s.t - s.r;
  rep.q_prime = s.q - s.r;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.lower_scale = std::pow(static_cast<long double>(n), (static_cast<long double>(s.t) - s.q) / 2.0L);
  const long double frobenius = std::pow(static_cast<long double>(n), s.t / 2.0L);

  if (s.r > 0) {
    if (rep.q_prime + s.z == 0) {
      rep.theorem_used = BoundTheorem::frobenius_fallback;
      rep.upper_bound = frobenius;
      rep.formula_terms = {{"n_power", frobenius}};
    } else {
      const auto ev = detail::log_formula(rep.t_prime, rep.t_prime + s.z, rep.q_prime + s.r, rep.q_prime + s.z,
                                          (static_cast<long double>(rep.t_prime) - rep.q_prime) / 2.0L, n, epsilon);
      rep.theorem_used = BoundTheorem::intersection;
      rep.upper_bound = std::exp(ev.log_value);
      rep.formula_terms = ev.terms;
    }
  } else if (s.q + s.z == 0) {
    rep.theorem_used = BoundTheorem::frobenius_fallback;
    rep.upper_bound = frobenius;
    rep.formula_terms = {{"n_power", frobenius}};
  } else {
    const auto ev =
        detail::log_formula(s.t, s.t + s.z, s.q, s.q + s.z, (static_cast<long double>(s.t) - s.q) / 2.0L, n, epsilon);
    rep.general_value = std::exp(ev.log_value);
    rep.upper_bound = *rep.general_value;
    rep.theorem_used = BoundTheorem::general;
    rep.formula_terms = ev.terms;
    if (s.bipartite) {
      rep.bipartite_value = bipartite_bound(s.t, s.q, n, epsilon);
      if (*rep.bipartite_value <= rep.upper_bound) {
        rep.upper_bound = *rep.bipartite_value;
        rep.theorem_used = BoundTheorem::bipartite;
      }
    }
  }
  rep.log_upper_bound = std::log(rep.upper_bound);
  return rep;
}

inline NormBoundReport norm_upper_bound(const ShapeGraph& h, std::size_t n, double epsilon) {
  return norm_upper_bound(analyze(h), n, epsilon);
}

inline NormBoundReport warmup_report(std::size_t n, double epsilon) {
  NormBoundReport rep;
  rep.t = 2;
  rep.q = 1;
  rep.t_prime = 2;
  rep.q_prime = 1;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.theorem_used = BoundTheorem::warmup;
  rep.upper_bound = warmup_bound(n, epsilon);
  rep.log_upper_bound = std::log(rep.upper_bound);
  rep.lower_scale = std::sqrt(static_cast<long double>(n));
  rep.formula_terms = {{"e", std::exp(1.0L)},
                       {"sqrt_n", std::sqrt(static_cast<long double>(n))},
                       {"log_factor", std::log(static_cast<long double>(n) / epsilon) + 2.0L}};
  return rep;
}

// n^((t-q)/2). Requires every middle vertex to reach U or V.
inline long double lower_bound_scale(const ShapeStats& s, std::size_t n) {
  require(s.connected_to_uv, ErrorKind::hypothesis_violated,
          "a middle vertex has no path to U or V; the norm can be far below n^((t-q)/2)");
  return std::pow(static_cast<long double>(n), (static_cast<long double>(s.t) - s.q) / 2.0L);
}

}  // namespace graphmat
