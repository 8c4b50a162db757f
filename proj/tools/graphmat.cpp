// graphmat command-line front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphmat/graphmat.hpp"

namespace {

using namespace graphmat;

struct Flags {
  std::string shape;
  std::size_t n = 0;
  std::vector<std::size_t> n_grid;
  double epsilon = 0.01;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  unsigned workers = default_workers();
  std::string out;
  std::string suite = "all";
  std::uint64_t cap_entries = default_cap_entries();
  std::size_t count = 0;
  std::size_t k = 2;
};

std::vector<std::size_t> grid_of(const Flags& f) {
  if (!f.n_grid.empty()) return f.n_grid;
  require(f.n > 0, ErrorKind::invalid_argument, "one of --n or --n-grid is required");
  return {f.n};
}

// Writes the report body to --out (or stdout) and the summary to
// PATH.summary.txt (or stderr).
void emit(const Flags& f, const std::string& body, const std::string& summary) {
  if (f.out.empty()) {
    std::cout << body;
    std::cerr << summary;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write '" + f.out + "'");
  out << body;
  std::ofstream sum(f.out + ".summary.txt", std::ios::binary);
  require(static_cast<bool>(sum), ErrorKind::io, "cannot write '" + f.out + ".summary.txt'");
  sum << summary;
}

ExperimentConfig config_for(const Flags& f, Mode mode) {
  ExperimentConfig c;
  c.shape = load_shape(f.shape);
  c.shape_ref = f.shape;
  c.n_grid = grid_of(f);
  c.trials = f.trials;
  c.master_seed = f.seed;
  c.epsilon = f.epsilon;
  c.mode = mode;
  c.workers = f.workers;
  c.cap_entries = f.cap_entries;
  c.moment_k = f.k;
  return c;
}

std::string names_of(const ShapeGraph& h, const std::vector<ShapeVertex>& vs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? sep : "") + h.name(vs[i]);
  return s;
}

int cmd_bound(const Flags& f) {
  const auto c = config_for(f, Mode::bound);
  const auto rep = run_experiment(c);
  std::ostringstream text;
  const auto& s = rep.stats;
  text << "shape " << f.shape << ": t=" << s.t << " x=" << s.x << " y=" << s.y << " z=" << s.z << " q=" << s.q
       << " r=" << s.r << '\n';
  if (!s.middle_degree_ok || !s.connected_to_uv)
    text << "warning: middle_degree_ok=" << s.middle_degree_ok << " connected_to_uv=" << s.connected_to_uv << '\n';
  for (const auto& b : rep.bounds) {
    text << "n=" << b.n << " epsilon=" << format_number(b.epsilon) << " theorem=" << to_string(b.theorem_used)
         << " upper_bound=" << format_number(b.upper_bound) << " lower_scale=" << format_number(b.lower_scale) << '\n';
    for (const auto& [name, value] : b.formula_terms) text << "  " << name << '=' << format_number(value) << '\n';
  }
  if (f.out.empty()) {
    std::cout << text.str();
  } else {
    emit(f, report_csv(rep), report_summary(rep));
    std::cout << text.str();
  }
  return 0;
}

int cmd_sampling(const Flags& f, Mode mode) {
  const auto c = config_for(f, mode);
  if (mode == Mode::tightness)
    require(c.n_grid.size() >= 3, ErrorKind::invalid_argument, "tightness needs at least 3 grid points");
  const auto rep = run_experiment(c);
  emit(f, report_csv(rep), report_summary(rep));
  return rep.hard_failure ? 1 : 0;
}

int cmd_moments(const Flags& f) {
  const auto h = load_shape(f.shape);
  std::ostringstream text;
  text << "n,k,expected_trace,slot_bound,corollary_bound,bound_applies\n";
  for (std::size_t n : grid_of(f)) {
    const auto m = expected_trace_moment_exact(h, n, f.k, std::nullopt, f.workers);
    text << n << ',' << f.k << ',' << m.expected_trace << ',' << m.bound_value << ',' << m.corollary_bound << ','
         << (m.bound_applies ? 1 : 0) << '\n';
  }
  if (f.trials == 0) {
    if (f.out.empty()) std::cout << text.str();
    else emit(f, text.str(), "");
    return 0;
  }
  const auto rep = run_experiment(config_for(f, Mode::moments));
  std::cout << text.str();
  emit(f, report_csv(rep), report_summary(rep));
  return rep.hard_failure ? 1 : 0;
}

int cmd_separator(const Flags& f) {
  const auto h = load_shape(f.shape);
  const auto sep = min_separator(h);
  const auto s = analyze(h);
  std::ostringstream text;
  text << "q=" << sep.q << '\n';
  text << "q_prime=" << sep.q - h.r() << '\n';
  text << "separator={" << names_of(h, sep.separator, ",") << "}\n";
  text << "paths=" << sep.disjoint_paths.size() << '\n';
  for (const auto& p : sep.disjoint_paths) text << "  " << names_of(h, p, "-") << '\n';
  if (h.is_uv_bipartite()) {
    const auto vc = min_vertex_cover(h);
    text << "vertex_cover={" << names_of(h, vc.cover, ",") << "}\n";
  }
  text << "t=" << s.t << " z=" << s.z << " r=" << s.r << '\n';
  text << "middle_degree_ok=" << (s.middle_degree_ok ? "true" : "false") << '\n';
  text << "connected_to_uv=" << (s.connected_to_uv ? "true" : "false") << '\n';
  if (s.middle_degree_ok != s.connected_to_uv)
    text << "warning: the degree condition and the connectivity condition disagree for this shape\n";
  if (f.out.empty()) std::cout << text.str();
  else emit(f, text.str(), "");
  return 0;
}

int cmd_verify(const Flags& f) {
  PresetOptions o;
  o.seed = f.seed;
  if (f.count > 0) o.count = f.count;
  o.workers = f.workers;
  o.cap_entries = f.cap_entries;
  std::vector<std::string> suites;
  if (f.suite == "all") suites = preset_names();
  else suites.push_back(f.suite);
  std::ostringstream body, summary;
  bool all = true;
  for (const auto& name : suites) {
    const auto r = run_preset(name, o);
    all = all && r.passed;
    body << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
    for (const auto& d : r.details) body << "  " << d << '\n';
    summary << "wall_" << r.name << "_seconds=" << format_number(r.seconds) << '\n';
  }
  summary << "passed=" << (all ? "true" : "false") << '\n';
  emit(f, body.str(), summary.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph matrix norm bounds, estimates and verification suites"};
  app.name("graphmat");
  app.require_subcommand(1);
  Flags f;

  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--shape", f.shape, "Shape document (JSON with U, V, W, edges)")->required()->check(
        CLI::ExistingFile);
  };
  auto add_grid = [&](CLI::App* sub) {
    auto* n = sub->add_option("--n", f.n, "Input graph size")->check(CLI::PositiveNumber);
    auto* grid = sub->add_option("--n-grid", f.n_grid, "Ascending list of sizes, e.g. 64,128,256")->delimiter(',');
    n->excludes(grid);
    grid->excludes(n);
  };
  auto add_epsilon = [&](CLI::App* sub) {
    sub->add_option("--epsilon", f.epsilon, "Failure probability in (0,1)")->capture_default_str();
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--trials", f.trials, "Trials per n")->capture_default_str();
    sub->add_option("--seed", f.seed, "Master seed")->capture_default_str();
    sub->add_option("--workers", f.workers, "Worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);
    sub->add_option("--cap-entries", f.cap_entries,
                    "Largest explicit matrix, in entries (env GRAPHMAT_CAP_ENTRIES, default 10000000)");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", f.out, "Write the report here and the summary to PATH.summary.txt");
  };

  auto* bound = app.add_subcommand("bound", "Evaluate the norm upper bound and the lower-bound scale");
  add_shape(bound);
  add_grid(bound);
  add_epsilon(bound);
  add_out(bound);

  auto* estimate = app.add_subcommand("estimate", "Estimate norms on sampled graphs and compare with the bound");
  add_shape(estimate);
  add_grid(estimate);
  add_epsilon(estimate);
  add_run(estimate);
  add_out(estimate);

  auto* tightness = app.add_subcommand("tightness", "Fit the log-log slope of the median norm over an n-grid");
  add_shape(tightness);
  add_grid(tightness);
  add_epsilon(tightness);
  add_run(tightness);
  add_out(tightness);

  auto* moments = app.add_subcommand("moments", "Exact expected trace moments, optionally against sampled graphs");
  add_shape(moments);
  add_grid(moments);
  moments->add_option("--k", f.k, "Moment order, tr((R R^T)^k)")->check(CLI::Range(1, 4))->capture_default_str();
  add_run(moments);
  add_out(moments);

  auto* separator = app.add_subcommand("separator", "Minimum U-V separator and disjoint paths of a shape");
  add_shape(separator);
  add_out(separator);

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("--suite", f.suite,
                     "Suite name or 'all': wigner, warmup, konig, menger, moment-closed, constraint, partition, "
                     "montecarlo, tightness, witness, moment-inequality, intersection")
      ->capture_default_str();
  verify->add_option("--count", f.count, "Instance count for the randomized suites (default: per suite)");
  verify->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  verify->add_option("--workers", f.workers, "Worker threads (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--cap-entries", f.cap_entries,
                     "Largest explicit matrix, in entries (env GRAPHMAT_CAP_ENTRIES, default 10000000)");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (f.suite != "all") {
        const auto& names = preset_names();
        if (std::find(names.begin(), names.end(), f.suite) == names.end()) {
          std::cerr << "error: unknown suite '" << f.suite << "'\n";
          return 2;
        }
      }
      return cmd_verify(f);
    }
    if (bound->parsed()) return cmd_bound(f);
    if (estimate->parsed()) return cmd_sampling(f, Mode::estimate);
    if (tightness->parsed()) return cmd_sampling(f, Mode::tightness);
    if (moments->parsed()) return cmd_moments(f);
    if (separator->parsed()) return cmd_separator(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
