#pragma once

// Seeded multi-trial experiments over an n-grid with deterministic reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphmat/bounds.hpp"
#include "graphmat/error.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/moment_oracle.hpp"
#include "graphmat/parallel.hpp"
#include "graphmat/rgraph.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"
#include "graphmat/spectral.hpp"

namespace graphmat {

enum class Mode { bound, estimate, verify, tightness, moments, separator };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::bound: return "bound";
    case Mode::estimate: return "estimate";
    case Mode::verify: return "verify";
    case Mode::tightness: return "tightness";
    case Mode::moments: return "moments";
    case Mode::separator: return "separator";
  }
  return "unknown";
}

struct ExperimentConfig {
  ShapeGraph shape;
  std::string shape_ref;
  std::vector<std::size_t> n_grid;
  std::size_t trials = 20;
  std::uint64_t master_seed = 0;
  double epsilon = 0.01;
  Mode mode = Mode::estimate;
  unsigned workers = 1;
  std::uint64_t cap_entries = default_cap_entries();
  double tol = 1e-6;
  std::size_t moment_k = 2;
  bool use_warmup_bound = false;  // compare against e sqrt(n)(ln(n/eps)+2)
  double budget_seconds = 600.0;
};

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double measured = 0.0;  // operator norm, or trace moment in moments mode
  bool converged = true;
  std::size_t iterations = 0;
  long double upper_bound = 0;
  long double lower_scale = 0;
  bool exceeds_bound = false;
  std::string status = "ok";
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t points = 0;
};

struct MomentComparison {
  std::size_t n = 0;
  BigInt exact = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  bool agrees = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  ShapeStats stats;
  std::vector<NormBoundReport> bounds;  // one per n
  std::vector<TrialRecord> records;
  std::vector<double> medians;          // per n, over completed trials
  std::optional<SlopeFit> slope;
  double expected_slope = 0.0;
  std::vector<MomentComparison> moments;
  std::size_t violations = 0;
  std::size_t errors = 0;
  std::size_t nonconverged = 0;
  std::vector<std::size_t> skipped;
  std::vector<std::pair<std::string, double>> wall_times;
  bool hard_failure = false;
};

inline double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

inline std::pair<double, double> mean_and_standard_error(const std::vector<double>& values) {
  if (values.empty()) return {std::nan(""), std::nan("")};
  long double sum = 0;
  for (double v : values) sum += v;
  const long double mean = sum / values.size();
  if (values.size() < 2) return {static_cast<double>(mean), 0.0};
  long double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const long double var = ss / (values.size() - 1);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / values.size()))};
}

// Ordinary least squares of y on x with the standard error of the slope.
inline SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorKind::dimension_mismatch, "fit_line: x and y differ in length");
  require(x.size() >= 3, ErrorKind::invalid_argument, "slope fit needs at least 3 points");
  const std::size_t m = x.size();
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  long double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0, ErrorKind::invalid_argument, "slope fit needs distinct x values");
  SlopeFit fit;
  fit.points = m;
  fit.slope = static_cast<double>(sxy / sxx);
  fit.intercept = static_cast<double>(my - sxy / sxx * mx);
  long double rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const long double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.stderr_slope = m > 2 ? static_cast<double>(std::sqrt(rss / (m - 2) / sxx)) : 0.0;
  return fit;
}

// Slope of ln(value) against ln(n).
inline SlopeFit fit_loglog(const std::vector<std::size_t>& n, const std::vector<double>& values) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    x.push_back(std::log(static_cast<double>(n[i])));
    y.push_back(std::log(values[i]));
  }
  return fit_line(x, y);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
  return derive_seed(derive_seed(master, n), trial);
}

inline void validate(const ExperimentConfig& c) {
  require(c.trials >= 1, ErrorKind::invalid_argument, "trials must be at least 1");
  require(!c.n_grid.empty(), ErrorKind::invalid_argument, "n-grid must not be empty");
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    require(c.n_grid[i] >= 1, ErrorKind::invalid_argument, "n values must be positive");
    require(i == 0 || c.n_grid[i - 1] < c.n_grid[i], ErrorKind::invalid_argument, "n-grid must be ascending");
  }
  require(c.epsilon > 0 && c.epsilon < 1, ErrorKind::invalid_argument, "epsilon must lie in (0, 1)");
  require(c.mode != Mode::moments || (c.moment_k >= 1 && c.moment_k <= 4), ErrorKind::invalid_argument,
          "moment k must lie in 1..4");
}

namespace detail {

inline void measure_norm(const ExperimentConfig& c, TrialRecord& rec) {
  const InputGraph g = InputGraph::sample(rec.n, rec.seed);
  const GraphMatrix m(c.shape, g);
  PowerOptions opts;
  opts.tol = c.tol;
  opts.seed = derive_seed(rec.seed, 1);
  const auto est = operator_norm(m, opts, c.cap_entries);
  rec.measured = est.value;
  rec.converged = est.converged;
  rec.iterations = est.iterations;
}

inline void measure_moment(const ExperimentConfig& c, TrialRecord& rec) {
  const InputGraph g = InputGraph::sample(rec.n, rec.seed);
  const GraphMatrix m(c.shape, g);
  rec.measured = to_double(trace_moment(m.build_explicit(c.cap_entries), c.moment_k));
}

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  ExperimentReport rep;
  rep.config = config;
  rep.stats = analyze(config.shape);
  rep.expected_slope = (static_cast<double>(rep.stats.t) - static_cast<double>(rep.stats.q)) / 2.0;

  for (std::size_t n : config.n_grid)
    rep.bounds.push_back(config.use_warmup_bound ? warmup_report(n, config.epsilon)
                                                 : norm_upper_bound(rep.stats, n, config.epsilon));
  if (config.mode == Mode::bound || config.mode == Mode::separator || config.mode == Mode::verify) {
    rep.wall_times.emplace_back("total_seconds", std::chrono::duration<double>(clock::now() - start).count());
    return rep;
  }

  const bool moments = config.mode == Mode::moments;
  for (std::size_t gi = 0; gi < config.n_grid.size(); ++gi) {
    const std::size_t n = config.n_grid[gi];
    const auto n_start = clock::now();
    std::vector<TrialRecord> recs(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) {
      recs[t].n = n;
      recs[t].trial = t;
      recs[t].seed = trial_seed(config.master_seed, n, t);
      recs[t].upper_bound = rep.bounds[gi].upper_bound;
      recs[t].lower_scale = rep.bounds[gi].lower_scale;
    }
    auto run_one = [&](TrialRecord& rec) {
      try {
        if (moments)
          detail::measure_moment(config, rec);
        else
          detail::measure_norm(config, rec);
      } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
      }
    };
    // The first trial calibrates the projected cost of the configuration.
    const auto probe_start = clock::now();
    run_one(recs[0]);
    const double probe = std::chrono::duration<double>(clock::now() - probe_start).count();
    const double projected = probe * static_cast<double>(config.trials) / std::max(1u, config.workers);
    if (projected > config.budget_seconds) {
      for (auto& r : recs) r.status = "skipped";
      rep.skipped.push_back(n);
    } else {
      parallel_for(config.trials - 1, config.workers, [&](std::size_t i) { run_one(recs[i + 1]); });
    }
    std::vector<double> values;
    for (auto& r : recs) {
      if (r.status == "ok") {
        values.push_back(r.measured);
        if (!moments) {
          r.exceeds_bound = static_cast<long double>(r.measured) > r.upper_bound;
          if (r.exceeds_bound) ++rep.violations;
          if (!r.converged) ++rep.nonconverged;
        }
      } else if (r.status != "skipped") {
        ++rep.errors;
      }
      rep.records.push_back(r);
    }
    rep.medians.push_back(median(values));
    if (moments) {
      MomentComparison cmp;
      cmp.n = n;
      std::tie(cmp.mean, cmp.standard_error) = mean_and_standard_error(values);
      try {
        cmp.exact = expected_trace_moment_exact(config.shape, n, config.moment_k).expected_trace;
        const double diff = std::fabs(cmp.mean - to_double(cmp.exact));
        cmp.agrees = cmp.standard_error == 0.0 ? diff == 0.0 : diff <= 5.0 * cmp.standard_error;
      } catch (const Error&) {
        ++rep.errors;  // no exact value to compare against
      }
      if (!cmp.agrees) rep.hard_failure = true;
      rep.moments.push_back(cmp);
    }
    rep.wall_times.emplace_back("n" + std::to_string(n) + "_seconds",
                                std::chrono::duration<double>(clock::now() - n_start).count());
  }

  if (config.mode == Mode::tightness) {
    std::vector<std::size_t> ns;
    std::vector<double> meds;
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
      if (std::isfinite(rep.medians[i]) && rep.medians[i] > 0) {
        ns.push_back(config.n_grid[i]);
        meds.push_back(rep.medians[i]);
      }
    }
    if (ns.size() >= 3) rep.slope = fit_loglog(ns, meds);
  }
  if (rep.violations > 0 && !moments) rep.hard_failure = true;
  if (rep.errors > 0) rep.hard_failure = true;
  rep.wall_times.emplace_back("total_seconds", std::chrono::duration<double>(clock::now() - start).count());
  return rep;
}

inline std::string format_number(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10Lg", v);
  return buf;
}

// One record per line; no timing information, so reruns are byte-identical.
inline std::string report_csv(const ExperimentReport& rep) {
  std::ostringstream out;
  if (rep.config.mode == Mode::bound) {
    out << "n,epsilon,theorem,upper_bound,lower_scale,general_value,bipartite_value\n";
    for (const auto& b : rep.bounds) {
      out << b.n << ',' << format_number(b.epsilon) << ',' << to_string(b.theorem_used) << ','
          << format_number(b.upper_bound) << ',' << format_number(b.lower_scale) << ','
          << (b.general_value ? format_number(*b.general_value) : "") << ','
          << (b.bipartite_value ? format_number(*b.bipartite_value) : "") << '\n';
    }
    return out.str();
  }
  out << "n,trial,seed,measured,converged,iterations,upper_bound,lower_scale,measured_over_scale,exceeds_bound,status\n";
  for (const auto& r : rep.records) {
    const bool ok = r.status == "ok";
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << (ok ? format_number(r.measured) : "") << ','
        << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << format_number(r.upper_bound) << ','
        << format_number(r.lower_scale) << ','
        << (ok && r.lower_scale > 0 ? format_number(r.measured / r.lower_scale) : "") << ','
        << (r.exceeds_bound ? 1 : 0) << ',' << r.status << '\n';
  }
  return out.str();
}

// key=value lines, including wall-times.
inline std::string report_summary(const ExperimentReport& rep) {
  std::ostringstream out;
  const auto& s = rep.stats;
  out << "mode=" << to_string(rep.config.mode) << '\n';
  if (!rep.config.shape_ref.empty()) out << "shape=" << rep.config.shape_ref << '\n';
  out << "t=" << s.t << "\nx=" << s.x << "\ny=" << s.y << "\nz=" << s.z << "\nq=" << s.q << "\nr=" << s.r << '\n';
  out << "epsilon=" << format_number(rep.config.epsilon) << '\n';
  out << "trials=" << rep.config.trials << '\n';
  out << "seed=" << rep.config.master_seed << '\n';
  out << "records=" << rep.records.size() << '\n';
  for (std::size_t i = 0; i < rep.medians.size(); ++i)
    out << "median_n" << rep.config.n_grid[i] << '=' << format_number(rep.medians[i]) << '\n';
  if (rep.slope) {
    out << "expected_slope=" << format_number(rep.expected_slope) << '\n';
    out << "slope=" << format_number(rep.slope->slope) << '\n';
    out << "slope_stderr=" << format_number(rep.slope->stderr_slope) << '\n';
    out << "slope_points=" << rep.slope->points << '\n';
  }
  for (const auto& m : rep.moments) {
    out << "exact_moment_n" << m.n << '=' << m.exact << '\n';
    out << "mc_mean_n" << m.n << '=' << format_number(m.mean) << '\n';
    out << "mc_stderr_n" << m.n << '=' << format_number(m.standard_error) << '\n';
    out << "mc_agrees_n" << m.n << '=' << (m.agrees ? "true" : "false") << '\n';
  }
  out << "violations=" << rep.violations << '\n';
  out << "nonconverged=" << rep.nonconverged << '\n';
  out << "errors=" << rep.errors << '\n';
  out << "skipped=";
  for (std::size_t i = 0; i < rep.skipped.size(); ++i) out << (i ? "," : "") << rep.skipped[i];
  out << '\n';
  out << "hard_failure=" << (rep.hard_failure ? "true" : "false") << '\n';
  for (const auto& [key, seconds] : rep.wall_times) out << "wall_" << key << '=' << format_number(seconds) << '\n';
  return out.str();
}

}  // namespace graphmat
