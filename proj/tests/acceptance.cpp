// Acceptance run: one status line per criterion, exit 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "conepc/diagnostics.hpp"
#include "conepc/error.hpp"
#include "conepc/generators.hpp"
#include "oracles.hpp"

using namespace conepc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Run {
  std::string name;
  ConicProblem problem;
  ConvergenceTrace trace;
  bool ok = false;
  std::string error;
  double seconds = 0.0;
  bool sharp = false;
};

Run solve_instance(const std::string& name, ConicProblem p, double eps, bool sharp) {
  Run r{name, std::move(p), {}, false, "", 0.0, sharp};
  SolverConfig cfg;
  cfg.epsilon = eps;
  const auto t0 = Clock::now();
  try {
    r.trace = solve(r.problem, cfg);
    r.ok = true;
  } catch (const SolveError& e) {
    r.trace = e.trace();
    r.error = e.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d %s: %s (%s)\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double worst_of(const std::vector<CheckSummary>& s, const std::string& name, bool* pass) {
  for (const auto& c : s)
    if (c.name == name) {
      if (c.samples == 0) *pass = false;
      return c.worst;
    }
  *pass = false;
  return kInfinity;
}

Vector central_x(const ConicProblem& p, const ConePoint& s, double mu) { return -mu * p.barrier->gradient(s); }

}  // namespace

int main() {
  const std::uint64_t seed = seed_from_env();

  // ---------------------------------------------------------------- instances
  std::vector<Run> runs;
  for (int i = 0; i < 20; ++i) {
    const int m = 2 + i % 4;
    const int n = std::min(8, m + 2 + i % 3);
    runs.push_back(solve_instance("sharp_lp(" + std::to_string(m) + "," + std::to_string(n) + ")#" + std::to_string(i),
                                  make_sharp_lp(m, n, seed + i), 1e-12, true));
  }
  const int sdp_sizes[5] = {2, 3, 4, 3, 4};
  for (int i = 0; i < 5; ++i)
    runs.push_back(solve_instance("sharp_sdp(" + std::to_string(sdp_sizes[i]) + ")#" + std::to_string(i),
                                  make_sharp_sdp(sdp_sizes[i], seed + 100 + i), 1e-12, true));
  const std::size_t n_sharp = runs.size();
  runs.push_back(solve_instance("disc2d", make_disc2d(), 1e-12, false));
  runs.push_back(solve_instance("parabola2d", make_parabola2d(), 1e-10, false));
  runs.push_back(solve_instance("soc_test(5)", make_soc_test(5, seed), 1e-12, false));
  runs.push_back(solve_instance("hankel_poly(3)", make_hankel_poly(3), 1e-10, false));
  const Run& disc = runs[n_sharp];

  // ---------------------------------------------------------------- 1
  {
    const auto t0 = Clock::now();
    const std::vector<std::string> cones = {"orthant1", "orthant4", "orthant10", "psd1", "psd3", "psd6",
                                            "soc2", "soc5", "soc8", "product(orthant3,psd3,soc4)",
                                            "product(psd2,soc3,orthant1,hankel1)", "hankel1", "hankel3", "hankel6"};
    bool pass = true;
    std::map<std::string, double> worst;
    for (const auto& c : cones) {
      const auto s = barrier_identity_suite(*make_barrier(ConeDescriptor::parse(c)), 100, seed);
      for (const char* k : {"gx", "hx", "3x", "ndec"}) {
        const double w = worst_of(s, k, &pass);
        worst[k] = std::max(worst[k], w);
        if (!(w <= 1e-8)) pass = false;
      }
    }
    const double t = seconds_since(t0);
    pass = pass && t < 10.0;
    report(1, "barrier identities", pass,
           "gx " + fmt("%.2e", worst["gx"]) + ", hx " + fmt("%.2e", worst["hx"]) + ", 3x " + fmt("%.2e", worst["3x"]) +
               ", ndec " + fmt("%.2e", worst["ndec"]) + ", " + fmt("%.2f s", t));
  }

  // ---------------------------------------------------------------- 2
  {
    const auto t0 = Clock::now();
    const std::vector<std::string> cones = {"orthant6", "psd4", "soc6", "product(orthant2,psd3,soc3)", "hankel4"};
    bool pass = true;
    double nc3 = 0.0, sand = 0.0;
    for (const auto& c : cones) {
      const auto s = negative_curvature_suite(*make_barrier(ConeDescriptor::parse(c)), 100, seed);
      for (const auto& x : s) {
        if (x.name == "nc3") nc3 = std::max(nc3, x.worst);
        if (x.name == "nc_hessian_sandwich") sand = std::max(sand, x.worst);
        if ((x.name == "nc3" || x.name == "nc_hessian_sandwich") && !x.pass()) pass = false;
      }
    }
    const double t = seconds_since(t0);
    pass = pass && t < 30.0;
    report(2, "negative curvature", pass,
           "nc3 " + fmt("%.2e", nc3) + ", sandwich " + fmt("%.2e", sand) + ", " + fmt("%.2f s", t));
  }

  // ---------------------------------------------------------------- 3
  {
    const ConicProblem p = make_disc2d();
    double th = 0.0, pr = 0.0;
    int mismatches = 0, points = 0;
    for (int i = 0; i < 50; ++i)
      for (int j = 0; j < 50; ++j) {
        const double y1 = -1.0 + (2.0 * i + 1.0) / 50.0, y2 = -1.0 + (2.0 * j + 1.0) / 50.0;
        if (y1 * y1 + y2 * y2 >= 1.0) continue;
        ++points;
        const Vector y{{y1, y2}};
        const double t = theta(p, y);
        th = std::max(th, std::abs(t * t - oracle::disc_theta2(y1, y2)));
        pr = std::max(pr, (prediction_point(p, y) - oracle::disc_prediction(y)).norm());
        for (double beta : {0.1, 0.3, 0.5}) {
          const double e = oracle::disc_ellipse(y1, y2, beta);
          if (std::abs(e - 1.0) <= 1e-9) continue;
          if ((t <= beta) != (e <= 1.0)) ++mismatches;
        }
      }
    report(3, "disc closed forms", th <= 1e-10 && pr <= 1e-10 && mismatches == 0,
           std::to_string(points) + " points, theta^2 err " + fmt("%.2e", th) + ", p(y) err " + fmt("%.2e", pr) +
               ", ellipse mismatches " + std::to_string(mismatches));
  }

  // ---------------------------------------------------------------- 4
  {
    const ConicProblem p = make_parabola2d();
    SolverConfig cfg;
    cfg.max_corrector_steps = 200;
    Vector y = p.y_start;
    ConePoint s = p.barrier->point(slack(p, y));
    double worst = 0.0, gmax = 0.0;
    for (double mu : {1.0, 0.1, 0.01, 0.001}) {
      const CorrectorResult c = corrector(p, y, s, mu, 1e-10, cfg);
      y = c.y;
      s = c.s;
      gmax = std::max(gmax, c.gamma);
      worst = std::max(worst, std::abs(y(0) - 3.0 * y(1) * y(1)) / std::abs(y(0)));
    }
    report(4, "parabola central path", gmax <= 1e-10 && worst <= 1e-7,
           "max relative |y1 - 3 y2^2| " + fmt("%.2e", worst) + ", max gamma " + fmt("%.2e", gmax));
  }

  // ---------------------------------------------------------------- 5
  {
    double worst = 0.0, ratio = 0.0;
    int centered = 0, neighborhood = 0, stalled = 0;
    bool pass = true;
    SolverConfig cfg;
    cfg.max_corrector_steps = 100;
    for (std::size_t r = 0; r < n_sharp; ++r) {
      const Run& run = runs[r];
      const ConicProblem& p = run.problem;
      if (!run.ok) pass = false;
      for (const auto& rec : run.trace.records) {
        ++neighborhood;
        const double gap = p.optimum->f_star - p.b.dot(rec.y);
        ratio = std::max(ratio, gap / rec.gap_bound);
        if (gap > rec.gap_bound) pass = false;
        const double nm = p.nu() * rec.mu;
        // Below this scale the difference of O(1) inner products is rounding.
        if (nm < 1e-8) continue;
        // The gap deviation is mu <y, grad f - b / mu>, at most gamma times
        // the local norm of y times mu; center tightly enough for 1e-8.
        const double y_local = evaluate(p, rec.y, rec.point).primal_norm(rec.y);
        CorrectorResult c;
        try {
          c = corrector(p, rec.y, rec.point, rec.mu, std::min(1e-10, 1e-8 * p.nu() / y_local), cfg);
        } catch (const Error&) {
          ++stalled;
          pass = false;
          continue;
        }
        if (c.gamma > 1e-10) pass = false;
        const Vector x = central_x(p, c.s, rec.mu);
        const double g = p.c.dot(x) - p.b.dot(c.y);
        ++centered;
        worst = std::max(worst, std::abs(g - nm) / nm);
      }
    }
    pass = pass && worst <= 1e-7;
    report(5, "gap identity", pass,
           std::to_string(centered) + " centered points, " + std::to_string(stalled) + " stalled, max rel |gap - nu mu| " + fmt("%.2e", worst) + "; " +
               std::to_string(neighborhood) + " iterates, max gap / kappa1 mu " + fmt("%.3f", ratio));
  }

  // ---------------------------------------------------------------- 6
  {
    int bad = 0, steps = 0;
    bool solved = true;
    for (std::size_t r = 0; r < n_sharp; ++r) {
      if (!runs[r].ok) solved = false;
      for (bool ok : check_linear_rate(runs[r].trace)) {
        ++steps;
        if (!ok) ++bad;
      }
    }
    report(6, "global linear rate", solved && bad == 0,
           std::to_string(bad) + " violations in " + std::to_string(steps) + " steps over " + std::to_string(n_sharp) +
               " runs");
  }

  // ---------------------------------------------------------------- 7
  {
    const TailWindow w{1e-4, 1e-12, 5};
    int short_windows = 0, low = 0;
    double min_exp = kInfinity, max_time = 0.0;
    int max_pts = 0;
    for (std::size_t r = 0; r < n_sharp; ++r) {
      max_time = std::max(max_time, runs[r].seconds);
      try {
        const RateReport rr = fit_tail_exponent(runs[r].trace, w);
        min_exp = std::min(min_exp, rr.tail_exponent);
        max_pts = std::max(max_pts, rr.points);
        if (rr.tail_exponent < 1.4) ++low;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::WindowTooShort) throw;
        ++short_windows;
      }
    }
    std::string disc_detail;
    bool disc_ok = false;
    try {
      const RateReport rr = fit_tail_exponent(disc.trace, w);
      disc_ok = rr.tail_exponent < 1.2;
      disc_detail = "disc2d exponent " + fmt("%.3f", rr.tail_exponent);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowTooShort) throw;
      disc_detail = "disc2d window too short";
    }
    max_time = std::max(max_time, disc.seconds);
    const bool pass = short_windows == 0 && low == 0 && disc_ok && max_time < 5.0;
    report(7, "local superlinear rate", pass,
           std::to_string(short_windows) + "/" + std::to_string(n_sharp) + " sharp runs with < 5 tail points, " +
               std::to_string(low) + " below 1.4, min fitted " + (std::isfinite(min_exp) ? fmt("%.3f", min_exp) : "n/a") +
               ", most tail points " + std::to_string(max_pts) + "; " + disc_detail + "; slowest solve " +
               fmt("%.3f s", max_time));
  }

  // ---------------------------------------------------------------- 8
  {
    double min_slope = kInfinity;
    int fitted = 0, too_few = 0;
    for (std::size_t r = 0; r < n_sharp; ++r) {
      const Run& run = runs[r];
      if (run.problem.cone.kind != ConeKind::orthant) continue;
      const Metrics m = build_metrics(run.problem, run.trace);
      std::vector<double> lx, ly;
      for (const auto& rec : run.trace.records) {
        const double dy = weighted_norm(m.G, Vector(rec.y - run.problem.optimum->y_star), NormSide::primal);
        const double dp = prediction_error(run.problem, m, rec);
        // Tail, above the rounding floor of both sides.
        if (dy > 1e-1 || dy < 1e-7 || dp < 1e-13) continue;
        lx.push_back(std::log(dy));
        ly.push_back(std::log(dp));
      }
      if (lx.size() < 3) {
        ++too_few;
        continue;
      }
      const double n = static_cast<double>(lx.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      min_slope = std::min(min_slope, slope);
      ++fitted;
    }
    report(8, "quadratic prediction", too_few == 0 && min_slope >= 1.8,
           std::to_string(fitted) + " LP runs fitted, " + std::to_string(too_few) + " with < 3 tail points, min slope " +
               fmt("%.3f", min_slope));
  }

  // ---------------------------------------------------------------- 9
  {
    double worst = 0.0, worst_euclid = 0.0;
    int points = 0;
    bool pass = true;
    for (std::size_t r = 0; r < n_sharp; ++r) {
      const Run& run = runs[r];
      for (const auto& rec : run.trace.records) {
        const NullResidual nr = null_residual(run.problem, evaluate(run.problem, rec.y, rec.point));
        const double scale = 1.0 + rec.s.norm();
        worst = std::max(worst, nr.local / scale);
        worst_euclid = std::max(worst_euclid, nr.euclidean / scale);
        ++points;
        if (!(nr.local <= 1e-8 * scale)) pass = false;
      }
    }
    report(9, "null residual", pass,
           std::to_string(points) + " iterates, max local / (1+|s|) " + fmt("%.2e", worst) +
               ", max euclidean / (1+|s|) " + fmt("%.2e", worst_euclid));
  }

  // ---------------------------------------------------------------- 10
  {
    int bad = 0, searches = 0;
    for (const auto& run : runs) {
      bad += predictor_growth_violations(run.trace, 1e-12);
      searches += static_cast<int>(run.trace.records.size()) - 1;
    }
    report(10, "predictor doubling bound", bad == 0,
           std::to_string(bad) + " violations in " + std::to_string(searches) + " searches");
  }

  // ---------------------------------------------------------------- 11
  {
    int rejected = 0, failed = 0;
    for (const auto& run : runs) {
      rejected += run.trace.initial_step_rejections;
      if (!run.ok) ++failed;
    }
    std::string detail = std::to_string(rejected) + " initial-step rejections over " + std::to_string(runs.size()) +
                         " runs, " + std::to_string(failed) + " failed runs";
    for (const auto& run : runs)
      if (!run.ok) detail += "; " + run.name + ": " + run.error;
    report(11, "initial predictor step accepted", rejected == 0 && failed == 0, detail);
  }

  // ---------------------------------------------------------------- 12
  {
    const std::vector<std::string> cones = {"orthant5", "psd3", "soc4", "product(orthant2,psd2,soc3)", "hankel3",
                                            "parabola2d", "disc2d"};
    double worst[3] = {0, 0, 0};
    bool pass = true;
    Rng rng = make_rng(seed, "acceptance-fd");
    for (const auto& c : cones) {
      const BarrierPtr b = make_barrier(ConeDescriptor::parse(c));
      const SmoothOracle o = barrier_oracle(b);
      for (int i = 0; i < 20; ++i) {
        const Vector x = b->random_interior(rng);
        int k = 0;
        for (FdOrder ord : {FdOrder::gradient, FdOrder::hessian, FdOrder::third}) {
          const FdResult r = fd_check(o, x, ord, seed + i);
          worst[k] = std::max(worst[k], r.max_rel_error);
          if (!r.pass) pass = false;
          ++k;
        }
      }
    }
    report(12, "finite-difference agreement", pass,
           "gradient " + fmt("%.2e", worst[0]) + ", hessian " + fmt("%.2e", worst[1]) + ", third " +
               fmt("%.2e", worst[2]));
  }

  return failures == 0 ? 0 : 1;
}
