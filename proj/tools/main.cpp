// conepc command-line front end.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <regex>

#include "conepc/diagnostics.hpp"
#include "conepc/error.hpp"
#include "conepc/generators.hpp"
#include "conepc/path_following.hpp"
#include "conepc/problem_io.hpp"
#include "conepc/random.hpp"
#include "conepc/trace_io.hpp"
#include "conepc/version.hpp"

using namespace conepc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

bool is_input_error(ErrorKind k) {
  return k == ErrorKind::SyntaxError || k == ErrorKind::DimensionMismatch || k == ErrorKind::RankDeficient ||
         k == ErrorKind::UnknownExample || k == ErrorKind::ParameterOutOfRange;
}

int report_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return is_input_error(e.kind()) ? kExitUsage : kExitFailure;
}

void print(const std::vector<ReportLine>& lines) { std::cout << format_report(lines); }

int run_solve(const std::string& file, double eps, int max_iter, const std::string& trace_path) {
  const ConicProblem p = read_problem_file(file);
  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.max_outer_iterations = max_iter;
  try {
    const ConvergenceTrace t = solve(p, cfg);
    if (!trace_path.empty()) write_trace_file(t, trace_path);
    const auto& last = t.records.back();
    std::vector<ReportLine> lines{
        {"iterations", double(t.records.size() - 1), double(max_iter), true},
        {"mu", last.mu, eps / p.nu(), last.mu <= eps / p.nu()},
        {"dual_objective", last.dual_obj, 0.0, true},
        {"gap_bound", last.gap_bound, eps * (1.0 + 1.0 / p.nu()), true},
        {"initial_step_rejections", double(t.initial_step_rejections), 0.0, t.initial_step_rejections == 0},
    };
    if (p.optimum) {
      const double err = std::abs(p.optimum->f_star - last.dual_obj);
      lines.push_back({"objective_error", err, last.gap_bound, err <= last.gap_bound * (1.0 + 1e-9) + 1e-12});
    }
    print(lines);
    return kExitOk;
  } catch (const SolveError& e) {
    if (!trace_path.empty()) write_trace_file(e.trace(), trace_path);
    throw;
  }
}

int run_check_barrier(const std::string& cone, std::uint64_t seed, int samples) {
  const BarrierPtr b = make_barrier(ConeDescriptor::parse(cone));
  std::vector<ReportLine> lines;
  auto add = [&](const std::vector<CheckSummary>& s) {
    for (const auto& c : s) lines.push_back({c.name, c.worst, c.threshold, c.pass()});
  };
  add(barrier_identity_suite(*b, samples, seed));
  if (b->negative_curvature()) add(negative_curvature_suite(*b, samples, seed));
  Rng rng = make_rng(seed, "check-barrier");
  const SmoothOracle o = barrier_oracle(b);
  for (auto [order, name] : {std::pair{FdOrder::gradient, "fd_gradient"}, std::pair{FdOrder::hessian, "fd_hessian"},
                             std::pair{FdOrder::third, "fd_third"}}) {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) worst = std::max(worst, fd_check(o, b->random_interior(rng), order, seed + i).max_rel_error);
    lines.push_back({name, worst, fd_threshold(order), worst <= fd_threshold(order)});
  }
  print(lines);
  for (const auto& l : lines)
    if (!l.pass) return kExitFailure;
  return kExitOk;
}

int run_estimate(const std::string& file, const std::string& trace_path, std::uint64_t seed) {
  const ConicProblem p = read_problem_file(file);
  const ConvergenceTrace saved = read_trace_file(trace_path);
  // The CSV holds no iterates; re-run the deterministic solve and compare.
  SolverConfig cfg;
  cfg.epsilon = std::max(1e-15, saved.records.back().mu * p.nu());
  ConvergenceTrace t;
  try {
    t = solve(p, cfg);
  } catch (const SolveError& e) {
    t = e.trace();
  }
  std::size_t same = 0;
  for (; same < std::min(t.records.size(), saved.records.size()); ++same)
    if (std::abs(t.records[same].mu - saved.records[same].mu) > 1e-9 * saved.records[same].mu) break;
  const AssumptionReport a = assess_assumptions(p, t, seed);
  const Metrics m = build_metrics(p, t);
  const double nu = p.nu();
  std::vector<ReportLine> lines{
      {"trace_rows_reproduced", double(same), double(saved.records.size()), same == saved.records.size()},
      {"b_norm_G", m.b_norm, std::sqrt(nu), m.b_norm <= std::sqrt(nu) * (1.0 + 1e-8)},
      {"A_norm_GB", m.a_norm, 1.0, m.a_norm <= 1.0 + 1e-8},
      {"gamma_d_regional_lower_estimate", a.gamma_d_estimate, 0.0, a.gamma_d_estimate > 0.0},
      {"sigma_d_estimate", a.sigma_d_estimate, 0.0, std::isfinite(a.sigma_d_estimate)},
      {"ladder_samples", double(a.sample_count), 1.0, a.sample_count >= 1},
  };
  if (a.gamma_d_estimate > 0.0) {
    const Constants k = constants(nu, a.gamma_d_estimate, a.sigma_d_estimate, 1.0 / 25.0, 1.0, 0.5);
    const double c0 = c0_constant(nu, a.gamma_d_estimate, a.sigma_d_estimate);
    const double c1 = c1_constant(c0, nu, cfg.beta_prime);
    lines.push_back({"kappa1", k.kappa1, nu, true});
    lines.push_back({"kappa2", k.kappa2, 0.0, true});
    lines.push_back({"kappa3", k.kappa3, 0.0, true});
    lines.push_back({"kappa", k.kappa, 0.0, true});
    lines.push_back({"c0", c0, 0.0, true});
    lines.push_back({"c1", c1, 0.0, true});
    lines.push_back({"superlinear_mu_threshold", superlinear_threshold(c0, nu, cfg.beta_prime), 0.0, true});
  }
  print(lines);
  for (const auto& n : a.notes) std::cout << "# " << n << "\n";
  return kExitOk;
}

int run_rates(const std::string& trace_path, double window, int min_points, double nu) {
  const ConvergenceTrace t = read_trace_file(trace_path);
  std::vector<ReportLine> lines;
  if (nu > 0.0) {
    const auto ok = check_linear_rate(trace_mus(t), nu);
    const auto bad = std::count(ok.begin(), ok.end(), false);
    lines.push_back({"linear_rate_violations", double(bad), 0.0, bad == 0});
  }
  TailWindow w;
  w.mu_max = window;
  w.min_points = min_points;
  const RateReport r = fit_tail_exponent(trace_mus(t), w);
  lines.push_back({"tail_points", double(r.points), double(min_points), true});
  lines.push_back({"tail_exponent", r.tail_exponent, 1.4, r.tail_exponent >= 1.4});
  lines.push_back({"tail_constant", r.tail_constant, 0.0, true});
  print(lines);
  return kExitOk;
}

// "sharp_lp(3,6)" or "sharp_lp" followed by positional integers.
std::pair<std::string, std::vector<int>> parse_example_args(const std::string& name, const std::vector<int>& extra) {
  static const std::regex call(R"(^([a-z_0-9]+)\(([0-9, ]*)\)$)");
  std::smatch mt;
  if (!std::regex_match(name, mt, call)) return {name, extra};
  std::vector<int> params;
  std::string body = mt[2];
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream in(body);
  for (int v; in >> v;) params.push_back(v);
  return {mt[1], params};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictor-corrector path following for conic problems"};
  app.require_subcommand(1);

  std::string file, trace_path, cone, example, out;
  double eps = 1e-8, window = 1e-4, nu = 0.0;
  int max_iter = 200, samples = 100, min_points = 4;
  std::uint64_t seed = seed_from_env();
  std::vector<int> params;

  auto* solve_cmd = app.add_subcommand("solve", "solve a CONEPROB file");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_option("--eps", eps);
  solve_cmd->add_option("--max-iter", max_iter);
  solve_cmd->add_option("--trace", trace_path);

  auto* check_cmd = app.add_subcommand("check-barrier", "barrier identity and curvature suites");
  check_cmd->add_option("cone", cone)->required();
  check_cmd->add_option("--seed", seed);
  check_cmd->add_option("--samples", samples);

  auto* est_cmd = app.add_subcommand("estimate", "assumption constants for a solved problem");
  est_cmd->add_option("file", file)->required();
  est_cmd->add_option("--trace", trace_path)->required();
  est_cmd->add_option("--seed", seed);

  auto* rates_cmd = app.add_subcommand("rates", "linear and superlinear rate checks on a trace");
  rates_cmd->add_option("--trace", trace_path)->required();
  rates_cmd->add_option("--window", window);
  rates_cmd->add_option("--min-points", min_points);
  rates_cmd->add_option("--nu", nu);

  auto* gen_cmd = app.add_subcommand("gen", "write a generated example");
  gen_cmd->add_option("example", example)->required();
  gen_cmd->add_option("params", params);
  gen_cmd->add_option("-o,--output", out)->required();
  gen_cmd->add_option("--seed", seed);

  auto* version_cmd = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(file, eps, max_iter, trace_path);
    if (*check_cmd) return run_check_barrier(cone, seed, samples);
    if (*est_cmd) return run_estimate(file, trace_path, seed);
    if (*rates_cmd) return run_rates(trace_path, window, min_points, nu);
    if (*gen_cmd) {
      const auto [name, ps] = parse_example_args(example, params);
      write_problem_file(generate_example(name, ps, seed), out);
      return kExitOk;
    }
    if (*version_cmd) {
      std::cout << "conepc " << kVersion << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
