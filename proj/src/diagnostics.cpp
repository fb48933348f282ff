#include "conepc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "conepc/error.hpp"

namespace conepc {

namespace {

constexpr double kLadderTop = 1e-1;
constexpr double kLadderBottom = 1e-8;
constexpr int kLadderScales = 30;
constexpr int kLadderDirections = 8;
constexpr int kOperatorProbes = 64;
constexpr double kFdStep = 1e-3;

// Least-squares line through (x_i, y_i); returns {slope, intercept}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

Matrix inverse_of(const SymOperator& m) {
  Matrix inv = m.factor().solve(Matrix(Matrix::Identity(m.size(), m.size())));
  return 0.5 * (inv + inv.transpose());
}

// Local-norm helpers at a point with hessian factor L.
double dual_local(const Eigen::LLT<Matrix>& llt, const Vector& g) {
  return llt.matrixL().solve(g).norm();
}
double scaled_frobenius(const Eigen::LLT<Matrix>& llt, const Matrix& t) {
  const Matrix w = llt.matrixL().solve(t);
  return llt.matrixL().solve(Matrix(w.transpose())).norm();
}

Vector unit_local(Rng& rng, const Matrix& h, Eigen::Index n) {
  Vector u = gaussian_vector(rng, n);
  return u / std::sqrt(u.dot(h * u));
}

}  // namespace

// ---------------------------------------------------------------- metrics

double operator_norm_checked(const Matrix& a, const SymOperator& g, const SymOperator& b, std::uint64_t seed) {
  if (a.cols() <= 50) return operator_norm(a, g, b);
  // Power iteration on B^{-1} A^T G^{-1} A, one probe per step.
  Rng rng = make_rng(seed, "operator-norm");
  Vector h = gaussian_vector(rng, a.cols());
  double best = 0.0;
  for (int i = 0; i < kOperatorProbes; ++i) {
    const Vector ah = a * h;
    best = std::max(best, weighted_norm(g, ah, NormSide::dual) / weighted_norm(b, h, NormSide::primal));
    h = b.factor().solve(Vector(a.transpose() * g.factor().solve(ah)));
    h /= h.norm();
  }
  return best;
}

Metrics build_metrics(const ConicProblem& p, const ConvergenceTrace& trace) {
  if (trace.records.empty() || trace.records.front().k != 0 || std::abs(trace.records.front().mu - 1.0) > 1e-15 ||
      trace.records.front().y.size() != p.m())
    throw Error(ErrorKind::MissingInitialIterate, "trace has no centered mu = 1 iterate");
  Vector y1 = trace.records.front().y;
  SolverConfig tight;
  tight.max_corrector_steps = 100;
  try {
    y1 = corrector(p, y1, 1.0, 1e-12, tight).y;
  } catch (const Error&) {
    // keep the neighborhood point
  }
  Metrics m;
  const ConePoint s1 = p.barrier->point(slack(p, y1));
  m.s1 = s1.x;
  m.B_inverse = p.barrier->hessian(s1);
  m.B = SymOperator(inverse_of(m.B_inverse));
  m.G = SymOperator(p.A * m.B_inverse.matrix() * p.A.transpose());
  m.b_norm = weighted_norm(m.G, p.b, NormSide::dual);
  m.a_norm = operator_norm_checked(p.A, m.G, m.B, 0);
  return m;
}

// ---------------------------------------------------------------- assumptions

std::vector<Vector> sample_ladder(const ConicProblem& p, const Vector& y_star, std::uint64_t seed) {
  Rng rng = make_rng(seed, "ladder");
  std::vector<Vector> out;
  const double ratio = std::pow(kLadderBottom / kLadderTop, 1.0 / (kLadderScales - 1));
  double t = kLadderTop;
  // Directions tilted toward y_start reach narrow feasible cones at a vertex.
  Vector toward = p.y_start - y_star;
  const bool tilt = toward.norm() > 0.0;
  if (tilt) toward /= toward.norm();
  auto keep = [&](const Vector& u, double scale) {
    Vector y = y_star + scale * u / u.norm();
    if (p.barrier->in_domain(slack(p, y)) && strictly_feasible(p, y)) out.push_back(std::move(y));
  };
  for (int j = 0; j < kLadderScales; ++j, t *= ratio) {
    for (int d = 0; d < kLadderDirections; ++d) {
      const Vector u = gaussian_vector(rng, p.m());
      keep(u, t);
      if (tilt) keep(Vector(toward + uniform(rng, 0.0, 1.0) * u / u.norm()), t);
    }
  }
  return out;
}

double estimate_gamma_d(const ConicProblem& p, const Vector& y_star, const SymOperator& G,
                        const std::vector<Vector>& samples) {
  const double f_star = p.b.dot(y_star);
  double best = kInfinity;
  int used = 0;
  for (const Vector& y : samples) {
    if ((y - y_star).norm() <= 1e-10) continue;
    const double dist = weighted_norm(G, y - y_star, NormSide::primal);
    best = std::min(best, (f_star - p.b.dot(y)) / dist);
    ++used;
  }
  if (used == 0) throw Error(ErrorKind::NoSamples, "no usable samples around y_star");
  return std::max(0.0, best);
}

SigmaEstimate estimate_sigma_d(const ConicProblem& p, const ConvergenceTrace& trace, const Vector& s_star,
                               const SymOperator& B) {
  SigmaEstimate out;
  for (const auto& rec : trace.records) {
    if (rec.point.x.size() != p.dim()) continue;
    const Vector z = p.barrier->hessian(rec.point).apply(s_star);
    out.mus.push_back(rec.mu);
    out.values.push_back(weighted_norm(B, z, NormSide::primal));
    out.estimate = std::max(out.estimate, out.values.back());
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.mus.size(); ++i)
    if (out.mus[i] < 1.0 && out.values[i] > 0.0) {
      lx.push_back(std::log(out.mus[i]));
      ly.push_back(std::log(out.values[i]));
    }
  if (lx.size() >= 2) {
    out.growth_slope = fit_line(lx, ly).first;
    out.diverging = out.growth_slope < -0.5;
  }
  return out;
}

SigmaEstimate estimate_sigma_d(const ConicProblem& p, const ConvergenceTrace& trace, const SymOperator& B) {
  if (!p.optimum) throw Error(ErrorKind::MissingOptimum, "problem has no known optimum");
  return estimate_sigma_d(p, trace, p.optimum->s_star, B);
}

AssumptionReport assess_assumptions(const ConicProblem& p, const ConvergenceTrace& trace, std::uint64_t seed) {
  if (!p.optimum) throw Error(ErrorKind::MissingOptimum, "problem has no known optimum");
  const Metrics m = build_metrics(p, trace);
  AssumptionReport r;
  r.B = m.B;
  r.G = m.G;
  const auto samples = sample_ladder(p, p.optimum->y_star, seed);
  r.sample_count = static_cast<int>(samples.size());
  r.gamma_d_estimate = estimate_gamma_d(p, p.optimum->y_star, m.G, samples);
  const SigmaEstimate sigma = estimate_sigma_d(p, trace, p.optimum->s_star, m.B);
  r.sigma_d_estimate = sigma.estimate;
  r.notes.push_back("gamma_d is a regional lower estimate over the sample ladder");
  if (sigma.diverging) r.notes.push_back("sigma_d grows as mu decreases; the boundedness assumption looks violated");
  return r;
}

// ---------------------------------------------------------------- constants

Constants constants(double nu, double gamma_d, double sigma_d, double beta, double mu, double r) {
  if (!(nu >= 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "nu must be at least 1");
  if (!(gamma_d > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "gamma_d must be positive");
  if (!(sigma_d >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "sigma_d must be nonnegative");
  if (!(beta >= 0.0 && beta <= 1.0 / 9.0)) throw Error(ErrorKind::ParameterOutOfRange, "beta must lie in [0, 1/9]");
  if (!(mu > 0.0 && mu <= 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "mu must lie in (0, 1]");
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "r must lie in (0, 1)");
  const double sn = std::sqrt(nu);
  Constants c;
  c.kappa1 = nu + beta * (beta + sn) / (1.0 - beta);
  c.kappa2 = (2.0 / gamma_d) * (sigma_d + 6.0 * nu * nu * beta / mu);
  c.kappa3 = c.kappa2 * (1.0 / r + 2.0 * sn / gamma_d);
  c.kappa = c.kappa1 * c.kappa2;
  return c;
}

double c0_constant(double nu, double gamma_d, double sigma_d) {
  const Constants k = constants(nu, gamma_d, sigma_d, 1.0 / 25.0, 1.0, 0.5);
  const double sn = std::sqrt(nu);
  return k.kappa * sn + (2.0 * k.kappa1 / gamma_d) *
                            (sigma_d + 6.0 * nu * nu / 25.0 +
                             2.0 * k.kappa * nu * (1.0 + 2.0 * sn) * (24.0 / 25.0) / (23.0 / 25.0));
}

double c1_constant(double c0, double nu, double beta_prime) {
  return beta_prime / ((1.0 + 2.0 * std::sqrt(nu)) * (c0 + 7.0 / (9.0 * 25.0)));
}

double superlinear_threshold(double c0, double nu, double beta_prime) {
  return beta_prime / ((1.0 + 2.0 * std::sqrt(nu)) * (9.0 * c0 + 7.0 / 25.0));
}

double xi_equation_root(double c0, double nu, double beta_prime, double mu) {
  if (!(c0 > 0.0 && nu > 0.0 && beta_prime > 0.0 && mu > 0.0))
    throw Error(ErrorKind::ParameterOutOfRange, "all inputs must be positive");
  const double rhs = beta_prime / ((1.0 + 2.0 * std::sqrt(nu)) * mu);
  const double c = rhs - 1.0 / 25.0;
  if (!(c > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "no positive root for this mu");
  const double b = 2.0 / 25.0;
  // c0 xi^2 + b xi - c = 0, cancellation-free form of the positive root.
  return 2.0 * c / (b + std::sqrt(b * b + 4.0 * c0 * c));
}

// ---------------------------------------------------------------- rates

std::vector<double> trace_mus(const ConvergenceTrace& trace) {
  std::vector<double> mus;
  for (const auto& r : trace.records) mus.push_back(r.mu);
  return mus;
}

std::vector<bool> check_linear_rate(const std::vector<double>& mus, double nu) {
  const double factor = 1.0 / (1.0 + 1.0 / (6.0 * std::sqrt(nu)));
  std::vector<bool> ok;
  for (std::size_t k = 0; k + 1 < mus.size(); ++k) ok.push_back(mus[k + 1] <= mus[k] * factor * (1.0 + 1e-12));
  return ok;
}

std::vector<bool> check_linear_rate(const ConvergenceTrace& trace) {
  return check_linear_rate(trace_mus(trace), trace.nu);
}

RateReport fit_tail_exponent(const std::vector<double>& mus, const TailWindow& window) {
  auto inside = [&](double mu) { return mu >= window.mu_min && mu <= window.mu_max; };
  int last = static_cast<int>(mus.size()) - 1;
  while (last >= 0 && !inside(mus[last])) --last;
  int first = last;
  while (first > 0 && inside(mus[first - 1])) --first;
  const int points = last < 0 ? 0 : last - first + 1;
  if (points < std::max(window.min_points, 2))
    throw Error(ErrorKind::WindowTooShort, std::to_string(points) + " iterates in the tail window");
  std::vector<double> x, y;
  for (int k = first; k < last; ++k) {
    x.push_back(std::log(mus[k]));
    y.push_back(std::log(mus[k + 1]));
  }
  RateReport r;
  if (x.size() == 1) {
    r.tail_exponent = y[0] / x[0];
    r.tail_constant = 1.0;
  } else {
    const auto [slope, icept] = fit_line(x, y);
    r.tail_exponent = slope;
    r.tail_constant = std::exp(icept);
  }
  r.first = first;
  r.last = last;
  r.points = points;
  return r;
}

RateReport fit_tail_exponent(const ConvergenceTrace& trace, const TailWindow& window) {
  RateReport r = fit_tail_exponent(trace_mus(trace), window);
  r.linear_rate_ok = check_linear_rate(trace);
  return r;
}

int predictor_growth_violations(const ConvergenceTrace& trace, double tol) {
  int bad = 0;
  for (const auto& rec : trace.records) {
    for (std::size_t i = 0; i < rec.trials.size(); ++i) {
      const auto& t = rec.trials[i];
      if (!std::isfinite(t.xi)) continue;
      const double bound = 1.0 + rec.alpha0 * std::ldexp(1.0, static_cast<int>(i));
      if (t.xi < bound - tol * bound) ++bad;
    }
  }
  return bad;
}

int bar_alpha_violations(const ConvergenceTrace& trace, double kappa) {
  int bad = 0;
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    const double mu = trace.records[k - 1].mu;
    const double beta = trace.config.beta_coefficient * mu;
    if (!(mu < (1.0 - 2.0 * beta) / kappa)) continue;
    const double gap = 1.0 - trace.records[k].alpha_bar;
    if (gap > kappa * mu / (1.0 + kappa * mu)) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------- central path

Sandwich hessian_sandwich(const ConicProblem& p, const Metrics& m, const IterateRecord& rec) {
  // hess F(x_mu) = mu^{-2} [hess F_*(s_mu)]^{-1}, compared through its inverse.
  const SymOperator hs = p.barrier->hessian(rec.point);
  const EigenRange r = relative_spectrum(hs, m.B_inverse);
  const double mu2 = rec.mu * rec.mu;
  const double nu = p.nu();
  return {{1.0 / (mu2 * r.hi), 1.0 / (mu2 * r.lo)}, 1.0 / (4.0 * nu * nu), 4.0 * nu * nu / mu2};
}

double prediction_error(const ConicProblem& p, const Metrics& m, const IterateRecord& rec) {
  if (!p.optimum) throw Error(ErrorKind::MissingOptimum, "problem has no known optimum");
  const LocalModel model = evaluate(p, rec.y, rec.point);
  return weighted_norm(m.G, model.y + model.v - p.optimum->y_star, NormSide::primal);
}

// ---------------------------------------------------------------- oracles

SmoothOracle barrier_oracle(BarrierPtr b) {
  SmoothOracle f;
  f.dim = b->dim();
  f.in_domain = [b](const Vector& x) { return b->in_domain(x); };
  f.value = [b](const Vector& x) { return b->value(x); };
  f.gradient = [b](const Vector& x) { return b->gradient(x); };
  f.hessian = [b](const Vector& x) { return Matrix(b->hessian(x).matrix()); };
  f.third = [b](const Vector& x, const Vector& h) { return b->third_directional(x, h); };
  return f;
}

SmoothOracle reduced_oracle(const ConicProblem& p) {
  SmoothOracle f;
  f.dim = static_cast<int>(p.m());
  const Matrix a = p.A;
  const Vector c = p.c;
  const BarrierPtr b = p.barrier;
  f.in_domain = [=](const Vector& y) { return b->in_domain(Vector(c - a.transpose() * y)); };
  f.value = [=](const Vector& y) { return b->value(Vector(c - a.transpose() * y)); };
  f.gradient = [=](const Vector& y) { return Vector(-a * b->gradient(Vector(c - a.transpose() * y))); };
  f.hessian = [=](const Vector& y) {
    return Matrix(a * b->hessian(Vector(c - a.transpose() * y)).matrix() * a.transpose());
  };
  f.third = [=](const Vector& y, const Vector& h) {
    return Matrix(a * b->third_directional(Vector(c - a.transpose() * y), Vector(-a.transpose() * h)) *
                  a.transpose());
  };
  return f;
}

double fd_threshold(FdOrder order) {
  switch (order) {
    case FdOrder::gradient: return 1e-6;
    case FdOrder::hessian: return 1e-5;
    case FdOrder::third: return 1e-4;
  }
  return 0.0;
}

FdResult fd_check(const SmoothOracle& f, const Vector& x, FdOrder order, std::uint64_t seed, int directions) {
  if (!f.in_domain(x)) throw Error(ErrorKind::OutsideCone, "finite-difference base point is not interior");
  const Matrix h0 = f.hessian(x);
  Eigen::LLT<Matrix> llt(h0);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "hessian at base point");
  Rng rng = make_rng(seed, "fd-check");
  FdResult out;
  out.threshold = fd_threshold(order);
  for (int d = 0; d < directions; ++d) {
    const Vector h = unit_local(rng, h0, f.dim);
    double err = 0.0;
    switch (order) {
      case FdOrder::gradient: {
        auto diff = [&](double t) { return (f.value(x + t * h) - f.value(x - t * h)) / (2.0 * t); };
        const double fd = (4.0 * diff(kFdStep / 2) - diff(kFdStep)) / 3.0;
        const double an = f.gradient(x).dot(h);
        err = std::abs(fd - an) / std::max(std::abs(an), 1.0);
        break;
      }
      case FdOrder::hessian: {
        auto diff = [&](double t) { return Vector((f.gradient(x + t * h) - f.gradient(x - t * h)) / (2.0 * t)); };
        const Vector fd = (4.0 * diff(kFdStep / 2) - diff(kFdStep)) / 3.0;
        const Vector an = h0 * h;
        err = dual_local(llt, fd - an) / std::max(dual_local(llt, an), 1.0);
        break;
      }
      case FdOrder::third: {
        auto diff = [&](double t) { return Matrix((f.hessian(x + t * h) - f.hessian(x - t * h)) / (2.0 * t)); };
        const Matrix fd = (4.0 * diff(kFdStep / 2) - diff(kFdStep)) / 3.0;
        const Matrix an = f.third(x, h);
        err = scaled_frobenius(llt, fd - an) / std::max(scaled_frobenius(llt, an), 1.0);
        break;
      }
    }
    out.max_rel_error = std::max(out.max_rel_error, err);
  }
  out.pass = out.max_rel_error <= out.threshold;
  return out;
}

// ---------------------------------------------------------------- barrier suites

namespace {

struct Tally {
  CheckSummary s;
  Tally(std::string name, double threshold) {
    s.name = std::move(name);
    s.threshold = threshold;
  }
  void add(double value) {
    ++s.samples;
    s.worst = std::max(s.worst, value);
    if (!(value <= s.threshold)) ++s.failures;
  }
};

}  // namespace

std::vector<CheckSummary> barrier_identity_suite(const Barrier& f, int samples, std::uint64_t seed) {
  Rng rng = make_rng(seed, "identity-suite:" + f.cone().name());
  const double nu = f.nu();
  const bool lh = f.log_homogeneous();
  Tally gx("gx", 1e-9), hx("hx", 1e-8), x3("3x", 1e-8), ndec("ndec", 1e-8), homog("log_homogeneity", 1e-8);
  Tally sc("self_concordance", 1e-6), sig("sigma_bound", 1e-8), trdp("recession_primal", 1e-9),
      trdd("recession_dual", 1e-9), dikin("dikin_containment", 0.0);
  for (int it = 0; it < samples; ++it) {
    const Vector x = f.random_interior(rng);
    const ConePoint p = f.point(x);
    const Vector g = f.gradient(p);
    const Matrix h = f.hessian(p).matrix();
    Eigen::LLT<Matrix> llt(h);
    const Vector dir = unit_local(rng, h, f.dim());

    if (lh) {
      gx.add(std::abs(g.dot(x) + nu) / nu);
      hx.add(dual_local(llt, h * x + g) / dual_local(llt, g));
      x3.add(scaled_frobenius(llt, f.third_directional(p, x) + 2.0 * h) / scaled_frobenius(llt, 2.0 * h));
      const Vector hg = llt.solve(g);
      ndec.add(std::abs(g.dot(hg) - nu) / nu);
      double worst = 0.0;
      for (double tau : {0.5, 2.0, 10.0}) {
        const ConePoint q = f.point(tau * x);
        worst = std::max(worst, (f.gradient(q) - g / tau).norm() / (g.norm() / tau));
        worst = std::max(worst, (f.hessian(q).matrix() - h / (tau * tau)).norm() / (h.norm() / (tau * tau)));
        const double expect = f.value(p) - nu * std::log(tau);
        worst = std::max(worst, std::abs(f.value(q) - expect) / std::max(1.0, std::abs(expect)));
      }
      homog.add(worst);
    }

    const Matrix t = f.third_directional(p, dir);
    sc.add(std::abs(dir.dot(t * dir)) - 2.0);
    sig.add(f.sigma_measure(p, dir) - 1.0);

    const Vector u = f.random_cone_element(rng);
    if (lh && u.norm() > 0.0) {
      const double lhs = std::sqrt(u.dot(h * u));
      const double rhs = -g.dot(u);
      trdp.add((lhs - rhs) / std::max(1.0, rhs));
    }
    if (lh) {
      const Vector s = -f.gradient(f.random_interior(rng));
      const double lhs = llt.matrixL().solve(s).norm();
      const double rhs = s.dot(x);
      trdd.add((lhs - rhs) / std::max(1.0, rhs));
    }

    const Vector w = x + 0.99 * dir;
    dikin.add(f.margin(w) >= -1e-12 * (1.0 + w.norm()) ? 0.0 : 1.0);
  }
  std::vector<CheckSummary> out;
  for (Tally* t : {&gx, &hx, &x3, &ndec, &homog, &sc, &sig, &trdp, &trdd, &dikin})
    if (t->s.samples > 0) out.push_back(t->s);
  return out;
}

std::vector<CheckSummary> negative_curvature_suite(const Barrier& f, int samples, std::uint64_t seed) {
  Rng rng = make_rng(seed, "nc-suite:" + f.cone().name());
  Tally nc3("nc3", 1e-9), nc2("nc2", 1e-9), pos("hessian_positivity", 1e-9), sand("nc_hessian_sandwich", 1e-8);
  for (int it = 0; it < samples; ++it) {
    const Vector x = f.random_interior(rng);
    const ConePoint p = f.point(x);
    const Vector g = f.gradient(p);
    const Matrix h = f.hessian(p).matrix();
    const Vector dir = unit_local(rng, h, f.dim());
    Vector u = f.random_cone_element(rng);
    if (u.norm() == 0.0) u = f.random_interior(rng);
    u /= std::sqrt(u.dot(h * u));

    // <D3F(x)[h,h], u> = h^T D3F(x)[u] h
    nc3.add(dir.dot(f.third_directional(p, u) * dir));

    const Vector z = f.random_interior(rng);
    const Vector step = z - x;
    const Vector shift = f.gradient(z) - g - h * step;
    const double scale = std::abs(f.gradient(z).dot(u)) + std::abs(g.dot(u)) + std::abs((h * step).dot(u));
    nc2.add(shift.dot(u) / std::max(1.0, scale));

    Vector k = f.random_cone_element(rng);
    if (k.norm() > 0.0) {
      k /= std::sqrt(k.dot(h * k));
      pos.add(-(h * k).dot(u));
    }

    const double alpha = uniform(rng, 0.0, 0.95);
    const double sigma = f.sigma_measure(p, step);
    const SymOperator ha = f.hessian(x + alpha * step);
    const EigenRange r = relative_spectrum(ha, SymOperator(h));
    const double lo = 1.0 / ((1.0 + alpha * sigma) * (1.0 + alpha * sigma));
    const double hi = 1.0 / ((1.0 - alpha) * (1.0 - alpha));
    sand.add(std::max((lo - r.lo) / lo, (r.hi - hi) / hi));
  }
  return {nc3.s, nc2.s, pos.s, sand.s};
}

bool check_lemma_ell(const Barrier& f, const Vector& x, const Vector& u, const SymOperator& h) {
  const ConePoint px = f.point(x);
  const Vector g = f.gradient(px);
  const double lhs = g.dot(u - x);
  if (lhs < -1e-12 * (1.0 + std::abs(g.dot(u)) + std::abs(g.dot(x))))
    throw Error(ErrorKind::HypothesisNotSatisfied, "<grad F(x), u - x> is negative");
  // E_H(u) inside the Dikin ellipsoid of u is enough for containment.
  if (!f.in_domain(u))
    throw Error(ErrorKind::HypothesisNotSatisfied, "u is not interior, containment cannot be verified");
  const EigenRange ru = relative_spectrum(h, f.hessian(u));
  if (ru.lo < 1.0 - 1e-12)
    throw Error(ErrorKind::HypothesisNotSatisfied, "E_H(u) is not verified to lie in the cone");
  const double nu = f.nu();
  const EigenRange r = relative_spectrum(h, f.hessian(px));
  return r.lo >= 1.0 / (4.0 * nu * nu) - 1e-9;
}

bool check_dikin_corollary(const Barrier& f, const Vector& x, const Vector& u) {
  return check_lemma_ell(f, x, u, f.hessian(u));
}

bool check_step_corollary(const Barrier& f, const Vector& x, const Vector& u) {
  const double nu = f.nu();
  const EigenRange r = relative_spectrum(f.hessian(Vector(x + u)), f.hessian(x));
  return r.hi <= 4.0 * nu * nu * (1.0 + 1e-9);
}

}  // namespace conepc
