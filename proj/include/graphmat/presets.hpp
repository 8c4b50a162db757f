#pragma once

// Named end-to-end checks. Each preset returns a verdict plus human-readable
// detail lines; the acceptance binary and `graphmat verify` both call these.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "graphmat/bounds.hpp"
#include "graphmat/error.hpp"
#include "graphmat/gmatrix.hpp"
#include "graphmat/harness.hpp"
#include "graphmat/jacobi_svd.hpp"
#include "graphmat/matching.hpp"
#include "graphmat/moment_oracle.hpp"
#include "graphmat/oracle/brute_force.hpp"
#include "graphmat/parallel.hpp"
#include "graphmat/rgraph.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"
#include "graphmat/spectral.hpp"
#include "graphmat/witness.hpp"

namespace graphmat {

struct PresetOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> count;   // instance count for the randomized suites
  std::optional<std::size_t> trials;  // trials per n for the sampling suites
  unsigned workers = 1;
  std::uint64_t cap_entries = default_cap_entries();
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

inline std::string ratio_line(const std::string& what, std::size_t ok, std::size_t total) {
  return what + ": " + std::to_string(ok) + "/" + std::to_string(total);
}

}  // namespace detail

// Random shapes for the combinatorial suites.
namespace random_shapes {

// U-V bipartite, 1..max_side vertices per side, random edge density.
inline ShapeGraph bipartite(std::mt19937_64& rng, std::size_t max_side = 8) {
  std::uniform_int_distribution<std::size_t> side(1, max_side);
  const std::size_t x = side(rng), y = side(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = unit(rng);
  std::vector<std::string> u, v;
  for (std::size_t i = 0; i < x; ++i) u.push_back("u" + std::to_string(i + 1));
  for (std::size_t j = 0; j < y; ++j) v.push_back("v" + std::to_string(j + 1));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& a : u)
    for (const auto& b : v)
      if (unit(rng) < p) edges.emplace_back(a, b);
  return ShapeGraph::create(u, v, {}, edges);
}

// Up to max_vertices vertices with random roles; with `intersection` some
// vertices sit in both U and V. Middle vertices get at least one edge.
inline ShapeGraph general(std::mt19937_64& rng, bool intersection, std::size_t max_vertices = 12) {
  std::uniform_int_distribution<std::size_t> size(2, max_vertices);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t t = size(rng);
  // role 0: U, 1: V, 2: W, 3: U and V
  std::vector<int> role(t);
  for (auto& r : role) {
    const double roll = unit(rng);
    r = roll < 0.25 ? 0 : roll < 0.5 ? 1 : 2;
    if (intersection && unit(rng) < 0.15) r = 3;
  }
  auto has_u = [&] { return std::any_of(role.begin(), role.end(), [](int r) { return r == 0 || r == 3; }); };
  auto has_v = [&] { return std::any_of(role.begin(), role.end(), [](int r) { return r == 1 || r == 3; }); };
  if (!has_u()) role[0] = 0;
  if (!has_v()) role[t - 1] = 1;
  std::vector<std::string> names(t), u, v, w;
  for (std::size_t i = 0; i < t; ++i) {
    names[i] = "a" + std::to_string(i);
    if (role[i] == 0 || role[i] == 3) u.push_back(names[i]);
    if (role[i] == 1 || role[i] == 3) v.push_back(names[i]);
    if (role[i] == 2) w.push_back(names[i]);
  }
  const double p = 0.1 + 0.4 * unit(rng);
  std::vector<std::vector<bool>> adj(t, std::vector<bool>(t, false));
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if (unit(rng) < p) adj[i][j] = adj[j][i] = true;
  std::uniform_int_distribution<std::size_t> pick(0, t - 1);
  for (std::size_t i = 0; i < t; ++i) {
    if (role[i] != 2) continue;
    if (std::none_of(adj[i].begin(), adj[i].end(), [](bool b) { return b; })) {
      std::size_t j = pick(rng);
      if (j == i) j = (i + 1) % t;
      adj[i][j] = adj[j][i] = true;
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if (adj[i][j]) edges.emplace_back(names[i], names[j]);
  ShapeOptions opts;
  opts.intersection_mode = intersection;
  return ShapeGraph::create(u, v, w, edges, opts);
}

}  // namespace random_shapes

namespace presets {

inline bool valid_path(const ShapeGraph& h, const std::vector<ShapeVertex>& path) {
  if (path.empty() || !h.in_U(path.front()) || !h.in_V(path.back())) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!h.adjacent(path[i], path[i + 1])) return false;
  return true;
}

// Median norm of the single-edge matrix is close to 2 sqrt(n).
inline CheckResult wigner(const PresetOptions& o) {
  CheckResult res{"wigner", true, {}, 0.0};
  ExperimentConfig c;
  c.shape = shapes::single_edge();
  c.shape_ref = "edge";
  c.n_grid = {256, 512, 1024};
  c.trials = o.trials.value_or(20);
  c.master_seed = o.seed;
  c.workers = o.workers;
  c.cap_entries = o.cap_entries;
  const auto rep = run_experiment(c);
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    const double s = std::sqrt(static_cast<double>(c.n_grid[i]));
    const double scaled = rep.medians[i] / s;
    const bool ok = scaled >= 1.7 && scaled <= 2.3;
    res.passed = res.passed && ok;
    res.details.push_back("n=" + std::to_string(c.n_grid[i]) + " median/sqrt(n)=" + detail::fmt(scaled));
  }
  if (rep.errors > 0 || !rep.skipped.empty()) res.passed = false;
  return res;
}

// Fraction of samples above e sqrt(n)(ln(n/eps)+2) at eps = 0.1.
inline CheckResult warmup(const PresetOptions& o) {
  CheckResult res{"warmup", true, {}, 0.0};
  ExperimentConfig c;
  c.shape = shapes::single_edge();
  c.shape_ref = "edge";
  c.n_grid = {128, 512};
  c.trials = o.trials.value_or(200);
  c.master_seed = o.seed;
  c.epsilon = 0.1;
  c.use_warmup_bound = true;
  c.workers = o.workers;
  c.cap_entries = o.cap_entries;
  const auto rep = run_experiment(c);
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    std::size_t above = 0, total = 0;
    double worst = 0.0;
    for (const auto& r : rep.records) {
      if (r.n != c.n_grid[i] || r.status != "ok") continue;
      ++total;
      if (r.exceeds_bound) ++above;
      worst = std::max(worst, static_cast<double>(r.measured / r.upper_bound));
    }
    const double frac = total == 0 ? 1.0 : static_cast<double>(above) / static_cast<double>(total);
    res.passed = res.passed && total == c.trials && frac <= 0.17;
    res.details.push_back("n=" + std::to_string(c.n_grid[i]) + " above=" + std::to_string(above) + "/" +
                          std::to_string(total) + " max norm/bound=" + detail::fmt(worst));
  }
  return res;
}

// Min cover == max matching == brute force on random bipartite shapes.
inline CheckResult konig(const PresetOptions& o) {
  CheckResult res{"konig", true, {}, 0.0};
  const std::size_t count = o.count.value_or(1000);
  std::vector<char> ok(count, 0);
  parallel_for(count, o.workers, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(o.seed, i));
    const auto h = random_shapes::bipartite(rng);
    const auto vc = min_vertex_cover(h);
    std::vector<bool> in_cover(h.t(), false);
    for (auto v : vc.cover) in_cover[v] = true;
    const bool covers = std::all_of(h.edges().begin(), h.edges().end(),
                                    [&](const ShapeEdge& e) { return in_cover[e.first] || in_cover[e.second]; });
    ok[i] = covers && vc.cover.size() == vc.q && vc.q == vc.matching_size && vc.q == oracle::kuhn_matching_size(h) &&
            vc.q == oracle::brute_force_min_cover(h);
  });
  const auto good = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  res.passed = good == count;
  res.details.push_back(detail::ratio_line("equalities", good, count));
  return res;
}

// Separator size == disjoint paths == brute force, with certificates checked.
inline CheckResult menger(const PresetOptions& o) {
  CheckResult res{"menger", true, {}, 0.0};
  const std::size_t count = o.count.value_or(500);
  std::vector<char> ok(count, 0), inter(count, 0);
  parallel_for(count, o.workers, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(o.seed, i));
    const bool intersection = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.2;
    inter[i] = intersection;
    const auto h = random_shapes::general(rng, intersection);
    const auto sep = min_separator(h);
    std::vector<bool> removed(h.t(), false), used(h.t(), false);
    for (auto v : sep.separator) removed[v] = true;
    bool paths_ok = true;
    for (const auto& p : sep.disjoint_paths) {
      paths_ok = paths_ok && valid_path(h, p);
      for (auto v : p) {
        paths_ok = paths_ok && !used[v];
        used[v] = true;
      }
    }
    ok[i] = paths_ok && sep.separator.size() == sep.q && sep.disjoint_paths.size() == sep.q &&
            separates(h, removed) && sep.q == oracle::brute_force_min_separator(h);
  });
  const auto good = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  res.passed = good == count;
  res.details.push_back(detail::ratio_line("equalities", good, count));
  res.details.push_back("intersection-mode shapes: " + std::to_string(std::count(inter.begin(), inter.end(), 1)));
  return res;
}

// Exact single-edge moments against closed counts and the slot bound.
inline CheckResult moment_closed(const PresetOptions& o) {
  CheckResult res{"moment-closed", true, {}, 0.0};
  const auto h = shapes::single_edge();
  std::size_t checked = 0, good = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto m = expected_trace_moment_exact(h, n, 1, std::nullopt, o.workers);
    ++checked;
    if (m.expected_trace == BigInt(n * (n - 1)) && m.expected_trace <= m.corollary_bound) ++good;
  }
  res.details.push_back(detail::ratio_line("k=1 traces equal n(n-1) for n<=8", good, checked));
  res.passed = good == checked;

  const auto m3 = expected_trace_moment_exact(h, 3, 2, std::nullopt, o.workers);
  res.details.push_back("n=3 k=2 trace=" + m3.expected_trace.str());
  res.passed = res.passed && m3.expected_trace == 18;

  std::size_t bound_checked = 0, bound_ok = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 2; n <= (k == 3 ? 6 : 8); ++n) {
      const auto m = expected_trace_moment_exact(h, n, k, std::nullopt, o.workers);
      const BigInt closed = big_pow(BigInt(2 * k), 2 * k - 2) * big_pow(BigInt(n), k + 1);
      ++bound_checked;
      if (m.corollary_bound == closed && m.expected_trace <= closed) ++bound_ok;
    }
  }
  res.details.push_back(detail::ratio_line("counts within (2k)^(2k-2) n^(k+1)", bound_ok, bound_checked));
  res.passed = res.passed && bound_ok == bound_checked;
  return res;
}

// Exhaustive minimum number of constraint edges.
inline CheckResult constraint(const PresetOptions&) {
  CheckResult res{"constraint", true, {}, 0.0};
  auto check = [&](const std::string& label, std::size_t got, std::size_t want) {
    res.details.push_back(label + ": " + std::to_string(got) + " (expected " + std::to_string(want) + ")");
    res.passed = res.passed && got == want;
  };
  const auto edge = shapes::single_edge();
  for (std::size_t k = 1; k <= 3; ++k) check("edge k=" + std::to_string(k), min_constraint_edges(edge, k, false), k - 1);
  const auto f3 = shapes::figure_3a();
  const auto q3 = analyze(f3).q;
  check("fig3a k=2", min_constraint_edges(f3, 2, true), q3 * 1);
  const auto f4 = shapes::figure_4a();
  const auto s4 = analyze(f4);
  check("fig4a k=2", min_constraint_edges(f4, 2, true), s4.q * 1 + s4.z * 2);
  return res;
}

// The average of t^t R' over all partitions is R, entrywise.
inline CheckResult partition(const PresetOptions& o) {
  CheckResult res{"partition", true, {}, 0.0};
  const auto h = shapes::single_edge();
  const std::size_t n = 6, t = h.t();
  const std::size_t graphs = o.count.value_or(4);
  std::size_t total_parts = 1;
  for (std::size_t i = 0; i < n; ++i) total_parts *= t;
  std::size_t tt = 1;
  for (std::size_t i = 0; i < t; ++i) tt *= t;
  std::size_t good = 0;
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    const auto g = InputGraph::sample(n, derive_seed(o.seed, gi));
    const auto direct = GraphMatrix(h, g).build_explicit();
    DenseMatrix<std::int64_t> sum(direct.rows(), direct.cols(), 0);
    Partition part(n, 0);
    for (std::size_t code = 0; code < total_parts; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= t) part[i] = c % t;
      const auto m = GraphMatrix::partitioned(h, g, part).build_explicit();
      for (std::size_t k = 0; k < sum.data().size(); ++k) sum.data()[k] += m.data()[k];
    }
    bool equal = true;
    for (std::size_t k = 0; k < sum.data().size(); ++k)
      equal = equal && static_cast<std::int64_t>(tt) * sum.data()[k] ==
                           static_cast<std::int64_t>(total_parts) * direct.data()[k];
    if (equal) ++good;
  }
  res.details.push_back("partitions per graph: " + std::to_string(total_parts));
  res.details.push_back(detail::ratio_line("graphs with exact identity", good, graphs));
  res.passed = good == graphs;
  return res;
}

// Sample mean of tr((R R^T)^k) against the exact expectation.
inline CheckResult montecarlo(const PresetOptions& o) {
  CheckResult res{"montecarlo", true, {}, 0.0};
  struct Config {
    std::string label;
    ShapeGraph shape;
    std::size_t n, k;
  };
  const auto star = ShapeGraph::create({"u1"}, {"v1", "v2"}, {}, {{"u1", "v1"}, {"u1", "v2"}});
  const std::vector<Config> configs = {{"edge n=6 k=2", shapes::single_edge(), 6, 2},
                                       {"fig3a n=6 k=2", shapes::figure_3a(), 6, 2},
                                       {"path n=5 k=2", shapes::path3(), 5, 2},
                                       {"path n=6 k=1", shapes::path3(), 6, 1},
                                       {"star n=6 k=2", star, 6, 2}};
  const std::size_t samples = o.count.value_or(2000);
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const auto& cfg = configs[ci];
    ExperimentConfig c;
    c.shape = cfg.shape;
    c.shape_ref = cfg.label;
    c.n_grid = {cfg.n};
    c.trials = samples;
    c.master_seed = derive_seed(o.seed, ci);
    c.mode = Mode::moments;
    c.moment_k = cfg.k;
    c.workers = o.workers;
    c.cap_entries = o.cap_entries;
    const auto rep = run_experiment(c);
    const auto& m = rep.moments.front();
    const double z = m.standard_error > 0 ? (m.mean - to_double(m.exact)) / m.standard_error : 0.0;
    res.details.push_back(cfg.label + ": exact=" + m.exact.str() + " mean=" + detail::fmt(m.mean) +
                          " se=" + detail::fmt(m.standard_error) + " z=" + detail::fmt(z, 3));
    res.passed = res.passed && m.agrees && rep.errors == 0;
  }
  return res;
}

// Log-log slope of the median norm and soundness of the main bound.
inline CheckResult tightness(const PresetOptions& o) {
  CheckResult res{"tightness", true, {}, 0.0};
  const std::vector<std::pair<std::string, ShapeGraph>> cases = {{"edge", shapes::single_edge()},
                                                                  {"path", shapes::path3()}};
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    ExperimentConfig c;
    c.shape = cases[ci].second;
    c.shape_ref = cases[ci].first;
    c.n_grid = {64, 128, 256, 512, 1024};
    c.trials = o.trials.value_or(20);
    c.master_seed = derive_seed(o.seed, ci);
    c.mode = Mode::tightness;
    c.workers = o.workers;
    c.cap_entries = o.cap_entries;
    const auto rep = run_experiment(c);
    const bool slope_ok = rep.slope && std::fabs(rep.slope->slope - rep.expected_slope) <= 0.15;
    res.details.push_back(cases[ci].first + ": slope=" + (rep.slope ? detail::fmt(rep.slope->slope) : "n/a") +
                          " (expected " + detail::fmt(rep.expected_slope) + ") violations=" +
                          std::to_string(rep.violations) + " skipped=" + std::to_string(rep.skipped.size()));
    res.passed = res.passed && slope_ok && rep.violations == 0 && rep.errors == 0 && rep.skipped.empty();
  }
  return res;
}

// Explicit test vectors certify the lower-bound scale.
inline CheckResult witness(const PresetOptions& o) {
  CheckResult res{"witness", true, {}, 0.0};
  const std::size_t trials = o.trials.value_or(20);
  const auto edge = shapes::single_edge();
  std::size_t exact = 0, total = 0;
  for (std::size_t n : {8u, 64u, 256u}) {
    for (std::size_t t = 0; t < trials; ++t) {
      const auto g = InputGraph::sample(n, trial_seed(o.seed, n, t));
      const auto w = build_witness_bipartite(g, edge);
      ++total;
      if (rayleigh(w.u, GraphMatrix(edge, g), w.v) == BigInt(n - 1)) ++exact;
    }
  }
  res.details.push_back(detail::ratio_line("edge: u^T R v = n-1", exact, total));
  res.passed = exact == total;

  const auto f3 = shapes::figure_3a();
  const auto stats = analyze(f3);
  for (std::size_t n : {64u, 256u}) {
    std::size_t good = 0;
    double lowest = 1e300;
    std::vector<double> ratios(trials);
    parallel_for(trials, o.workers, [&](std::size_t t) {
      const auto g = InputGraph::sample(n, trial_seed(derive_seed(o.seed, 1), n, t));
      const auto w = build_witness_bipartite(g, f3);
      const double value = std::fabs(to_double(rayleigh(w.u, GraphMatrix(f3, g), w.v)));
      ratios[t] = value / (w.u.norm() * w.v.norm()) / static_cast<double>(lower_bound_scale(stats, n));
    });
    for (double r : ratios) {
      if (r >= 0.1) ++good;
      lowest = std::min(lowest, r);
    }
    res.details.push_back("fig3a n=" + std::to_string(n) + ": " + detail::ratio_line("ratio >= 0.1 n^1.5", good, trials) +
                          " min=" + detail::fmt(lowest));
    res.passed = res.passed && 100 * good >= 95 * trials;
  }
  return res;
}

// tr((M M^T)^k)^(1/2k) dominates the top singular value and decreases in k.
inline CheckResult moment_inequality(const PresetOptions& o) {
  CheckResult res{"moment-inequality", true, {}, 0.0};
  const std::size_t count = o.count.value_or(100);
  std::vector<char> ok(count, 0);
  std::vector<double> slack(count, 0.0);
  parallel_for(count, o.workers, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(o.seed, i));
    std::uniform_int_distribution<std::size_t> dim(1, 16);
    std::uniform_int_distribution<int> entry(-5, 5);
    DenseMatrix<std::int64_t> m(dim(rng), dim(rng), 0);
    for (auto& v : m.data()) v = entry(rng);
    const auto sv = singular_values(m);
    const double smax = sv.empty() ? 0.0 : sv.front();
    bool good = true;
    double prev = 1e300, worst = 1e300;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double root = std::pow(to_double(trace_moment(m, k)), 1.0 / (2.0 * static_cast<double>(k)));
      good = good && root >= smax - 1e-9 && root <= prev * (1.0 + 1e-12);
      worst = std::min(worst, root - smax);
      prev = root;
    }
    ok[i] = good;
    slack[i] = worst;
  });
  const auto good = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  res.details.push_back(detail::ratio_line("matrices satisfying both properties", good, count));
  res.details.push_back("smallest root - sigma_max: " + detail::fmt(*std::min_element(slack.begin(), slack.end())));
  res.passed = good == count;
  return res;
}

// Intersection formula at r = 0 against the main formula, plus a sampled
// r = 1 shape against its bound.
inline CheckResult intersection(const PresetOptions& o) {
  CheckResult res{"intersection", true, {}, 0.0};
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> tdist(1, 12), zdist(0, 6);
  std::uniform_int_distribution<std::size_t> ndist(2, 1u << 20);
  std::uniform_real_distribution<double> edist(1e-6, 0.999);
  std::size_t equal = 0;
  const std::size_t points = 100;
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t t = tdist(rng), z = std::min(zdist(rng), t);
    const std::size_t q = std::uniform_int_distribution<std::size_t>(0, t)(rng);
    const std::size_t n = ndist(rng);
    const double eps = edist(rng);
    if (intersection_bound(t, z, q, 0, n, eps) == general_bound(t, z, q, n, eps)) ++equal;
  }
  res.details.push_back(detail::ratio_line("grid points with identical values", equal, points));
  res.passed = equal == points;

  ExperimentConfig c;
  c.shape = shapes::shared_pendant();
  c.shape_ref = "shared_pendant";
  c.n_grid = {64, 128};
  c.trials = o.trials.value_or(20);
  c.master_seed = o.seed;
  c.workers = o.workers;
  c.cap_entries = o.cap_entries;
  const auto rep = run_experiment(c);
  double worst = 0.0;
  for (const auto& r : rep.records) worst = std::max(worst, static_cast<double>(r.measured / r.upper_bound));
  res.details.push_back("shared_pendant: violations=" + std::to_string(rep.violations) + " max norm/bound=" +
                        detail::fmt(worst) + " theorem=" + to_string(rep.bounds.front().theorem_used));
  res.passed = res.passed && rep.violations == 0 && rep.errors == 0 &&
               rep.bounds.front().theorem_used == BoundTheorem::intersection;
  return res;
}

}  // namespace presets

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"wigner",     "warmup",     "konig",   "menger",
                                                 "moment-closed", "constraint", "partition", "montecarlo",
                                                 "tightness",  "witness",    "moment-inequality", "intersection"};
  return names;
}

inline CheckResult run_preset(const std::string& name, const PresetOptions& options = {}) {
  using Fn = CheckResult (*)(const PresetOptions&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"wigner", presets::wigner},           {"warmup", presets::warmup},
      {"konig", presets::konig},             {"menger", presets::menger},
      {"moment-closed", presets::moment_closed}, {"constraint", presets::constraint},
      {"partition", presets::partition},     {"montecarlo", presets::montecarlo},
      {"tightness", presets::tightness},     {"witness", presets::witness},
      {"moment-inequality", presets::moment_inequality}, {"intersection", presets::intersection}};
  for (const auto& [key, fn] : table) {
    if (key != name) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = fn(options);
    } catch (const Error& e) {
      res.name = name;
      res.passed = false;
      res.details.push_back(std::string("error: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  }
  fail(ErrorKind::invalid_argument, "unknown suite '" + name + "'");
}

}  // namespace graphmat
