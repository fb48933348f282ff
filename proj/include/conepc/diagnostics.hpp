#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conepc/dual_geometry.hpp"
#include "conepc/path_following.hpp"
#include "conepc/random.hpp"

namespace conepc {

// ---------------------------------------------------------------- metrics

/// B = [hess F_*(s_1)]^{-1} at the centered mu = 1 point, G = A B^{-1} A^T.
struct Metrics {
  SymOperator B;
  SymOperator G;
  /// hess F_*(s_1) = B^{-1}.
  SymOperator B_inverse;
  Vector s1;
  /// ||b|| in the dual norm of G; at most sqrt(nu).
  double b_norm;
  /// ||A||_{G,B}; at most 1.
  double a_norm;
};

/// Re-centers the first trace record tightly before forming B and G.
/// Throws MissingInitialIterate when the trace has no mu = 1 record.
Metrics build_metrics(const ConicProblem& p, const ConvergenceTrace& trace);

/// ||A||_{G,B}: exact below dimension 50, 64 random probes above.
double operator_norm_checked(const Matrix& a, const SymOperator& g, const SymOperator& b, std::uint64_t seed);

// ---------------------------------------------------------------- assumptions

/// Strictly feasible points on 30 geometric scales in [1e-8, 1e-1] around
/// y_star, 8 random directions per scale plus the same directions tilted
/// toward y_start.
std::vector<Vector> sample_ladder(const ConicProblem& p, const Vector& y_star, std::uint64_t seed);

/// min over samples of (f* - <b,y>) / ||y - y_star||_G. Regional lower
/// estimate only. Throws NoSamples.
double estimate_gamma_d(const ConicProblem& p, const Vector& y_star, const SymOperator& G,
                        const std::vector<Vector>& samples);

struct SigmaEstimate {
  double estimate = 0.0;
  std::vector<double> mus;
  std::vector<double> values;
  /// Slope of log value against log mu over the trace; near -1 means the
  /// bound is growing like 1/mu.
  double growth_slope = 0.0;
  bool diverging = false;
};

/// max over trace iterates of ||hess F_*(s_k) s_star||_B.
SigmaEstimate estimate_sigma_d(const ConicProblem& p, const ConvergenceTrace& trace, const Vector& s_star,
                               const SymOperator& B);
/// Uses the problem's known optimum; throws MissingOptimum.
SigmaEstimate estimate_sigma_d(const ConicProblem& p, const ConvergenceTrace& trace, const SymOperator& B);

struct AssumptionReport {
  double gamma_d_estimate = 0.0;
  double sigma_d_estimate = 0.0;
  int sample_count = 0;
  SymOperator B;
  SymOperator G;
  std::vector<std::string> notes;
};
AssumptionReport assess_assumptions(const ConicProblem& p, const ConvergenceTrace& trace, std::uint64_t seed);

// ---------------------------------------------------------------- constants

struct Constants {
  double kappa1;
  double kappa2;
  double kappa3;
  double kappa;
};

/// beta in [0, 1/9], mu in (0, 1], r in (0, 1); ParameterOutOfRange.
Constants constants(double nu, double gamma_d, double sigma_d, double beta, double mu, double r);

/// Growth constant of the proximity bound with beta_k = mu_k / 25.
double c0_constant(double nu, double gamma_d, double sigma_d);
double c1_constant(double c0, double nu, double beta_prime);
/// mu below which the superlinear bound applies.
double superlinear_threshold(double c0, double nu, double beta_prime);
/// Positive root of c0 xi^2 + (1 + 2 xi)/25 = beta' / ((1 + 2 sqrt(nu)) mu).
double xi_equation_root(double c0, double nu, double beta_prime, double mu);

// ---------------------------------------------------------------- rates

/// mu_{k+1} <= mu_k / (1 + 1/(6 sqrt(nu))) per step.
std::vector<bool> check_linear_rate(const std::vector<double>& mus, double nu);
std::vector<bool> check_linear_rate(const ConvergenceTrace& trace);

struct TailWindow {
  double mu_max = 1e-4;
  double mu_min = 1e-12;
  int min_points = 4;
};

struct RateReport {
  std::vector<bool> linear_rate_ok;
  double tail_exponent = 0.0;
  /// log mu_{k+1} = log C + p log mu_k.
  double tail_constant = 0.0;
  int first = 0;
  int last = 0;
  int points = 0;
};

/// Least-squares fit over the trailing run of mu values inside the window.
/// Throws WindowTooShort.
RateReport fit_tail_exponent(const std::vector<double>& mus, const TailWindow& window = {});
RateReport fit_tail_exponent(const ConvergenceTrace& trace, const TailWindow& window = {});

std::vector<double> trace_mus(const ConvergenceTrace& trace);

/// xi(alpha_{k,i}) >= 1 + alpha_{k,0} 2^i over every finite trial; returns
/// the number of violations.
int predictor_growth_violations(const ConvergenceTrace& trace, double tol = 1e-12);

/// 1 - alpha_bar <= kappa mu / (1 + kappa mu) at iterates with
/// mu < (1 - 2 beta) / kappa; returns the number of violations.
int bar_alpha_violations(const ConvergenceTrace& trace, double kappa);

// ---------------------------------------------------------------- central path

/// Relative spectrum of hess F(x_mu) against B, with the bounds
/// 1/(4 nu^2) and 4 nu^2 / mu^2.
struct Sandwich {
  EigenRange range;
  double lower;
  double upper;
  bool holds(double slack = 0.0) const {
    return range.lo >= lower * (1.0 - slack) && range.hi <= upper * (1.0 + slack);
  }
};
Sandwich hessian_sandwich(const ConicProblem& p, const Metrics& m, const IterateRecord& rec);

/// ||p(y) - y_star||_G; at centered points y + v = y_mu - mu y'_mu.
double prediction_error(const ConicProblem& p, const Metrics& m, const IterateRecord& rec);

// ---------------------------------------------------------------- oracles

/// Smooth function with analytic derivatives and a local norm used to
/// scale finite-difference steps and errors.
struct SmoothOracle {
  int dim = 0;
  std::function<bool(const Vector&)> in_domain;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;
  std::function<Matrix(const Vector&, const Vector&)> third;
};
SmoothOracle barrier_oracle(BarrierPtr barrier);
/// f(y) = F_*(c - A^T y).
SmoothOracle reduced_oracle(const ConicProblem& p);

enum class FdOrder { gradient, hessian, third };
double fd_threshold(FdOrder order);

struct FdResult {
  double max_rel_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Richardson-extrapolated central differences along random directions of
/// unit local norm; errors are measured in the local norm at x.
FdResult fd_check(const SmoothOracle& f, const Vector& x, FdOrder order, std::uint64_t seed, int directions = 4);

// ---------------------------------------------------------------- barrier suites

struct CheckSummary {
  std::string name;
  int samples = 0;
  int failures = 0;
  double worst = 0.0;
  double threshold = 0.0;
  bool pass() const { return samples > 0 && failures == 0; }
};

/// gx, hx, 3x, ndec, log-homogeneity, self-concordance, sigma bound,
/// recession bounds and Dikin containment at random interior points.
std::vector<CheckSummary> barrier_identity_suite(const Barrier& f, int samples, std::uint64_t seed);

/// nc3 pairing, nc2 shift, hessian positivity and the hessian sandwich
/// along a segment. Directions are normalized to unit local norm.
std::vector<CheckSummary> negative_curvature_suite(const Barrier& f, int samples, std::uint64_t seed);

/// H >= hess F(x) / (4 nu^2) given E_H(u) inside K and <grad F(x), u - x> >= 0.
/// Throws HypothesisNotSatisfied when either hypothesis fails numerically.
bool check_lemma_ell(const Barrier& f, const Vector& x, const Vector& u, const SymOperator& h);
/// hess F(u) >= hess F(x) / (4 nu^2) for interior x, u with <grad F(x), u - x> >= 0.
bool check_dikin_corollary(const Barrier& f, const Vector& x, const Vector& u);
/// hess F(x + u) <= 4 nu^2 hess F(x) for u in K.
bool check_step_corollary(const Barrier& f, const Vector& x, const Vector& u);

}  // namespace conepc
