#include "conepc/path_following.hpp"

#include <cmath>

namespace conepc {

namespace {

constexpr double kInitialStepFactor = 1.0 / 6.0;

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "epsilon must be positive");
  if (!(beta_coefficient > 0.0 && beta_coefficient <= 1.0 / 25.0))
    throw Error(ErrorKind::ParameterOutOfRange, "beta coefficient must lie in (0, 1/25]");
  if (!(beta_prime > 0.0 && beta_prime <= 1.0 / 6.0))
    throw Error(ErrorKind::ParameterOutOfRange, "beta prime must lie in (0, 1/6]");
  if (!(corrector_tolerance_slack > 0.0 && corrector_tolerance_slack <= 1.0))
    throw Error(ErrorKind::ParameterOutOfRange, "corrector slack must lie in (0, 1]");
  if (max_outer_iterations < 1 || max_corrector_steps < 1 || max_predictor_trials < 1)
    throw Error(ErrorKind::ParameterOutOfRange, "iteration limits must be positive");
}

CorrectorResult corrector(const ConicProblem& p, const Vector& y_pred, double mu, double beta_target,
                          const SolverConfig& config) {
  return corrector(p, y_pred, p.barrier->point(slack(p, y_pred)), mu, beta_target, config);
}

CorrectorResult corrector(const ConicProblem& p, const Vector& y_pred, const ConePoint& s_pred, double mu,
                          double beta_target, const SolverConfig& config) {
  if (!(mu > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "mu must be positive");
  CorrectorResult r;
  r.y = y_pred;
  r.s = s_pred;
  LocalModel m = evaluate(p, r.y, r.s);
  while (true) {
    const Vector g = m.grad - p.b / mu;
    const double lambda = m.dual_norm(g);
    r.gamma = lambda;
    if (lambda <= beta_target) return r;
    if (r.steps >= config.max_corrector_steps)
      throw Error(ErrorKind::CorrectorStalled,
                  "decrement " + std::to_string(lambda) + " above " + std::to_string(beta_target));
    const double t = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
    const Vector d = -t * m.hess.factor().solve(g);
    ConePoint s_next;
    if (!p.barrier->try_advance(r.s, -(p.A.transpose() * d), s_next))
      throw Error(ErrorKind::CorrectorStalled, "Newton step left the feasible set");
    r.y += d;
    r.s = std::move(s_next);
    ++r.steps;
    m = evaluate(p, r.y, r.s);
  }
}

PathIterate initialize(const ConicProblem& p, const SolverConfig& config, int* steps) {
  const double beta0 = config.beta_coefficient;
  PathIterate it;
  it.mu = 1.0;
  it.y = p.y_start;
  it.s = p.barrier->point(slack(p, it.y));
  it.gamma = proximity_gamma(evaluate(p, it.y, it.s), p.b, 1.0);
  int n = 0;
  if (it.gamma > beta0) {
    CorrectorResult c = corrector(p, it.y, it.s, 1.0, config.corrector_tolerance_slack * beta0, config);
    it.y = c.y;
    it.s = c.s;
    it.gamma = c.gamma;
    n = c.steps;
  }
  if (steps) *steps = n;
  return it;
}

PredictorSearch predictor_search(const ConicProblem& p, const PathIterate& it, const SolverConfig& config) {
  const LocalModel m = it.s.x.size() == p.dim() ? evaluate(p, it.y, it.s) : evaluate(p, it.y);
  PredictorSearch out;
  out.v_norm = m.v_norm;
  out.alpha_bar = max_feasible_step(p, m);
  out.sigma = slack_sigma(p, m);
  out.alpha0 = kInitialStepFactor * std::min(1.0, 1.0 / m.v_norm);

  auto trial = [&](double alpha) -> PredictorTrial {
    PredictorTrial t{alpha, kInfinity, kInfinity, false};
    if (!(alpha < out.alpha_bar * (1.0 - 1e-12))) return t;
    t.xi = xi(out.alpha_bar, alpha);
    try {
      t.big_gamma = big_gamma(p, m, it.mu, alpha, out.alpha_bar, out.sigma);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutsideCone) throw;
      return t;
    }
    t.accepted = std::isfinite(t.big_gamma) && std::isfinite(t.xi) && t.big_gamma <= config.beta_prime;
    return t;
  };

  PredictorTrial first = trial(out.alpha0);
  out.trials.push_back(first);
  if (!first.accepted)
    throw Error(ErrorKind::InitialStepRejected,
                "Gamma at the initial step is " + std::to_string(first.big_gamma));
  out.alpha = out.alpha0;
  out.i = 0;
  double alpha = out.alpha0;
  for (int i = 1; i < config.max_predictor_trials; ++i) {
    alpha = eta(out.alpha_bar, alpha);
    PredictorTrial t = trial(alpha);
    out.trials.push_back(t);
    if (!t.accepted) break;
    out.alpha = alpha;
    out.i = i;
  }
  return out;
}

double gap_bound(double nu, double beta, double mu) {
  return (nu + beta * (beta + std::sqrt(nu)) / (1.0 - beta)) * mu;
}

ConvergenceTrace solve(const ConicProblem& p, const SolverConfig& config) {
  config.validate();
  ConvergenceTrace trace;
  trace.cone = p.cone.name();
  trace.nu = p.nu();
  trace.config = config;
  const double nu = p.nu();

  PathIterate it;
  try {
    IterateRecord r0;
    r0.gamma_pre = proximity_gamma(p, p.y_start, 1.0);
    it = initialize(p, config, &r0.corrector_steps);
    r0.k = 0;
    r0.mu = it.mu;
    r0.gamma_post = it.gamma;
    r0.dual_obj = p.b.dot(it.y);
    r0.gap_bound = gap_bound(nu, config.beta_coefficient * it.mu, it.mu);
    r0.y = it.y;
    r0.s = it.s.x;
    r0.point = it.s;
    trace.records.push_back(std::move(r0));
  } catch (const Error& e) {
    throw SolveError(e, std::move(trace));
  }

  int k = 0;
  while (it.mu > config.epsilon / nu) {
    try {
      if (k >= config.max_outer_iterations)
        throw Error(ErrorKind::IterationLimit, "mu = " + std::to_string(it.mu));
      PredictorSearch search;
      try {
        search = predictor_search(p, it, config);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InitialStepRejected) ++trace.initial_step_rejections;
        throw;
      }
      const Vector v = evaluate(p, it.y, it.s).v;
      const Vector sv = p.A.transpose() * v;

      // Largest accepted trial first, then the earlier accepted ones.
      std::vector<std::size_t> order;
      for (std::size_t j = search.trials.size(); j-- > 0;)
        if (search.trials[j].accepted) order.push_back(j);

      bool done = false;
      int fallbacks = 0;
      for (std::size_t j : order) {
        const double alpha = search.trials[j].alpha;
        const double mu_next = it.mu / search.trials[j].xi;
        const double beta_next = config.beta_coefficient * mu_next;
        const Vector y_pred = it.y + alpha * v;
        IterateRecord rec;
        CorrectorResult c;
        try {
          const ConePoint s_pred = p.barrier->advance(it.s, -alpha * sv);
          rec.gamma_pre = proximity_gamma(evaluate(p, y_pred, s_pred), p.b, mu_next);
          c = corrector(p, y_pred, s_pred, mu_next, config.corrector_tolerance_slack * beta_next, config);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::CorrectorStalled && e.kind() != ErrorKind::OutsideCone &&
              e.kind() != ErrorKind::NotPositiveDefinite)
            throw;
          ++fallbacks;
          continue;
        }
        ++k;
        it.y = c.y;
        it.s = c.s;
        it.mu = mu_next;
        it.gamma = c.gamma;
        rec.k = k;
        rec.mu = mu_next;
        rec.alpha_bar = search.alpha_bar;
        rec.alpha = alpha;
        rec.i_k = static_cast<int>(j);
        rec.corrector_steps = c.steps;
        rec.gamma_post = c.gamma;
        rec.dual_obj = p.b.dot(it.y);
        rec.gap_bound = gap_bound(nu, beta_next, mu_next);
        rec.y = it.y;
        rec.s = it.s.x;
        rec.point = it.s;
        rec.alpha0 = search.alpha0;
        rec.trials = search.trials;
        rec.fallbacks = fallbacks;
        trace.corrector_fallbacks += fallbacks;
        trace.records.push_back(std::move(rec));
        done = true;
        break;
      }
      if (!done) throw Error(ErrorKind::CorrectorStalled, "no accepted predictor step could be corrected");
    } catch (const Error& e) {
      throw SolveError(e, std::move(trace));
    }
  }
  return trace;
}

}  // namespace conepc
