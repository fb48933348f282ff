#pragma once

#include <optional>

#include "conepc/cones.hpp"
#include "conepc/linalg.hpp"

namespace conepc {

/// Optimal pair supplied by a generator.
struct KnownOptimum {
  Vector y_star;
  Vector s_star;
  double f_star = 0.0;
  std::optional<Vector> x_star;
};

/// max <b,y> subject to s = c - A^T y in the slack cone, with the barrier
/// of the slack cone playing the role of F_*.
struct ConicProblem {
  Matrix A;
  Vector b;
  Vector c;
  ConeDescriptor cone;
  BarrierPtr barrier;
  Vector y_start;
  std::optional<KnownOptimum> optimum;

  Eigen::Index m() const { return A.rows(); }
  Eigen::Index dim() const { return A.cols(); }
  double nu() const { return barrier->nu(); }
};

/// Builds and validates: dimensions, full row rank, strictly feasible start.
ConicProblem make_problem(Matrix A, Vector b, Vector c, const ConeDescriptor& cone, Vector y_start,
                          std::optional<KnownOptimum> optimum = std::nullopt);

Vector slack(const ConicProblem& p, const Vector& y);
bool strictly_feasible(const ConicProblem& p, const Vector& y);

struct FDerivatives {
  double value;
  Vector gradient;
  SymOperator hessian;
};
FDerivatives f_derivatives(const ConicProblem& p, const Vector& y);

/// Everything the method needs at one point y; the Hessian factorization is
/// shared by all dual norms taken at y.
struct LocalModel {
  Vector y;
  Vector s;
  ConePoint point;
  Vector grad;
  SymOperator hess;
  Vector v;
  double v_norm;

  double dual_norm(const Vector& g) const { return hess.factor().half_solve(g).norm(); }
  double primal_norm(const Vector& h) const { return std::sqrt(std::max(0.0, hess.quad(h))); }
};
LocalModel evaluate(const ConicProblem& p, const Vector& y);
/// Uses the supplied slack instead of recomputing c - A^T y; iterates carry
/// their slack so that small components keep full relative precision.
LocalModel evaluate(const ConicProblem& p, const Vector& y, const ConePoint& s);

double proximity_gamma(const ConicProblem& p, const Vector& y, double mu);
double proximity_gamma(const LocalModel& model, const Vector& b, double mu);

/// min_t ||grad f(y) - t b||_y.
double theta(const ConicProblem& p, const Vector& y);

Vector predictor_direction(const ConicProblem& p, const Vector& y);
Vector prediction_point(const ConicProblem& p, const Vector& y);

double max_feasible_step(const ConicProblem& p, const Vector& y);
double max_feasible_step(const ConicProblem& p, const LocalModel& model);

double xi(double alpha_bar, double alpha);
double eta(double alpha_bar, double alpha);

/// sigma_{s(y)}(-A^T v(y)).
double slack_sigma(const ConicProblem& p, const LocalModel& model);

double big_gamma(const ConicProblem& p, const Vector& y, double mu, double alpha);
/// Reuses the factorization in `model`; sigma and alpha_bar precomputed.
double big_gamma(const ConicProblem& p, const LocalModel& model, double mu, double alpha,
                 double alpha_bar, double sigma);

Vector predicted_slack(const ConicProblem& p, const Vector& y);
/// A hess F_*(s) s_p at y, in the Euclidean norm and in the local dual
/// norm at y.
struct NullResidual {
  double euclidean;
  double local;
};
NullResidual null_residual(const ConicProblem& p, const Vector& y);
NullResidual null_residual(const ConicProblem& p, const LocalModel& model);

struct CentralPathResiduals {
  Vector x;
  double primal_residual;
  double gap;
  double nu_mu;
};
/// With x = -mu grad F_*(s(y)).
CentralPathResiduals central_path_residuals(const ConicProblem& p, const Vector& y, double mu);

}  // namespace conepc
