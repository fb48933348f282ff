#pragma once

#include <string>
#include <vector>

#include "conepc/dual_geometry.hpp"
#include "conepc/error.hpp"

namespace conepc {

struct SolverConfig {
  double epsilon = 1e-8;
  double beta_coefficient = 1.0 / 25.0;
  double beta_prime = 1.0 / 6.0;
  double corrector_tolerance_slack = 0.9;
  int max_outer_iterations = 200;
  int max_corrector_steps = 60;
  int max_predictor_trials = 64;

  /// Throws ParameterOutOfRange.
  void validate() const;
};

struct PathIterate {
  Vector y;
  ConePoint s;
  double mu = 1.0;
  double gamma = 0.0;
};

struct PredictorTrial {
  double alpha;
  double big_gamma;
  double xi;
  bool accepted;
};

struct PredictorSearch {
  double alpha_bar = 0.0;
  double alpha0 = 0.0;
  double alpha = 0.0;
  int i = 0;
  double sigma = 0.0;
  double v_norm = 0.0;
  std::vector<PredictorTrial> trials;
};

/// Row k describes iterate k and the predictor step that produced it; row 0
/// is the initial centered point with alpha = alpha_bar = 0.
struct IterateRecord {
  int k = 0;
  double mu = 1.0;
  double alpha_bar = 0.0;
  double alpha = 0.0;
  int i_k = 0;
  double gamma_pre = 0.0;
  double gamma_post = 0.0;
  int corrector_steps = 0;
  double dual_obj = 0.0;
  double gap_bound = 0.0;

  // In-memory only. `s` is the nominal slack; `point` carries the factors
  // and stays interior even where the nominal vector has drifted out.
  Vector y;
  Vector s;
  ConePoint point;
  double alpha0 = 0.0;
  std::vector<PredictorTrial> trials;
  int fallbacks = 0;
};

struct ConvergenceTrace {
  std::vector<IterateRecord> records;
  std::string cone;
  double nu = 0.0;
  SolverConfig config;
  int initial_step_rejections = 0;
  int corrector_fallbacks = 0;
};

/// Solver failure with the trace accumulated so far.
class SolveError : public Error {
 public:
  SolveError(const Error& cause, ConvergenceTrace trace)
      : Error(cause.kind(), cause.what()), trace_(std::move(trace)) {}
  const ConvergenceTrace& trace() const { return trace_; }

 private:
  ConvergenceTrace trace_;
};

struct CorrectorResult {
  Vector y;
  ConePoint s;
  int steps = 0;
  double gamma = 0.0;
};

/// Damped Newton on f(y) - <b,y>/mu until the decrement is <= beta_target.
CorrectorResult corrector(const ConicProblem& p, const Vector& y_pred, double mu, double beta_target,
                          const SolverConfig& config);
/// Same, with the slack of y_pred carried in.
CorrectorResult corrector(const ConicProblem& p, const Vector& y_pred, const ConePoint& s_pred, double mu,
                          double beta_target, const SolverConfig& config);

/// Centers y_start for mu = 1 into N(1, beta_coefficient).
PathIterate initialize(const ConicProblem& p, const SolverConfig& config, int* steps = nullptr);

PredictorSearch predictor_search(const ConicProblem& p, const PathIterate& it, const SolverConfig& config);

/// kappa_1 mu with beta = beta_coefficient mu.
double gap_bound(double nu, double beta, double mu);

ConvergenceTrace solve(const ConicProblem& p, const SolverConfig& config);

}  // namespace conepc
