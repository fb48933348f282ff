#include "conepc/dual_geometry.hpp"

#include <cmath>

#include "conepc/error.hpp"

namespace conepc {

ConicProblem make_problem(Matrix A, Vector b, Vector c, const ConeDescriptor& cone, Vector y_start,
                          std::optional<KnownOptimum> optimum) {
  ConicProblem p;
  p.cone = cone;
  p.barrier = make_barrier(cone);
  const Eigen::Index n = p.barrier->dim();
  if (A.cols() != n) throw Error(ErrorKind::DimensionMismatch, "A has wrong number of columns");
  if (c.size() != n) throw Error(ErrorKind::DimensionMismatch, "c has wrong length");
  if (b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "b has wrong length");
  if (y_start.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "y_start has wrong length");
  if (A.rows() == 0 || A.rows() > n) throw Error(ErrorKind::RankDeficient, "A must have 1..dim rows");
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-12);
  if (lu.rank() < A.rows()) throw Error(ErrorKind::RankDeficient, "A is not full row rank");
  if (optimum) {
    if (optimum->y_star.size() != A.rows() || optimum->s_star.size() != n ||
        (optimum->x_star && optimum->x_star->size() != n))
      throw Error(ErrorKind::DimensionMismatch, "optimum block has wrong lengths");
  }
  p.A = std::move(A);
  p.b = std::move(b);
  p.c = std::move(c);
  p.y_start = std::move(y_start);
  p.optimum = std::move(optimum);
  if (!strictly_feasible(p, p.y_start))
    throw Error(ErrorKind::InfeasibleStart, "c - A^T y_start is not interior to " + cone.name());
  return p;
}

Vector slack(const ConicProblem& p, const Vector& y) { return p.c - p.A.transpose() * y; }

bool strictly_feasible(const ConicProblem& p, const Vector& y) {
  return p.barrier->contains(slack(p, y));
}

FDerivatives f_derivatives(const ConicProblem& p, const Vector& y) {
  const Vector s = slack(p, y);
  const double value = p.barrier->value(s);
  Vector g = -p.A * p.barrier->gradient(s);
  SymOperator h(p.A * p.barrier->hessian(s).matrix() * p.A.transpose());
  h.factor();
  return {value, std::move(g), std::move(h)};
}

LocalModel evaluate(const ConicProblem& p, const Vector& y) {
  return evaluate(p, y, p.barrier->point(slack(p, y)));
}

LocalModel evaluate(const ConicProblem& p, const Vector& y, const ConePoint& s) {
  LocalModel m;
  m.y = y;
  m.s = s.x;
  m.point = s;
  m.grad = -p.A * p.barrier->gradient(m.point);
  m.hess = SymOperator(p.A * p.barrier->hessian(m.point).matrix() * p.A.transpose());
  m.v = m.hess.factor().solve(m.grad);
  m.v_norm = m.dual_norm(m.grad);
  return m;
}

double proximity_gamma(const LocalModel& model, const Vector& b, double mu) {
  return model.dual_norm(model.grad - b / mu);
}

double proximity_gamma(const ConicProblem& p, const Vector& y, double mu) {
  return proximity_gamma(evaluate(p, y), p.b, mu);
}

double theta(const ConicProblem& p, const Vector& y) {
  const LocalModel m = evaluate(p, y);
  const Factorization& f = m.hess.factor();
  const Vector g = f.half_solve(m.grad);
  const Vector bb = f.half_solve(p.b);
  const Vector r = g - (g.dot(bb) / bb.squaredNorm()) * bb;
  return r.norm();
}

Vector predictor_direction(const ConicProblem& p, const Vector& y) { return evaluate(p, y).v; }

Vector prediction_point(const ConicProblem& p, const Vector& y) { return y + evaluate(p, y).v; }

double max_feasible_step(const ConicProblem& p, const LocalModel& model) {
  const double a = p.barrier->max_step(model.point, -(p.A.transpose() * model.v));
  if (!std::isfinite(a))
    throw Error(ErrorKind::UnboundedStep, "prediction direction is a recession direction");
  return a;
}

double max_feasible_step(const ConicProblem& p, const Vector& y) {
  return max_feasible_step(p, evaluate(p, y));
}

double xi(double alpha_bar, double alpha) {
  if (!(alpha < alpha_bar)) throw Error(ErrorKind::StepAtBoundary, "alpha must be below alpha_bar");
  if (alpha < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "alpha must be nonnegative");
  return 1.0 + alpha * alpha_bar / (alpha_bar - alpha);
}

double eta(double alpha_bar, double alpha) {
  return alpha < alpha_bar / 3.0 ? 2.0 * alpha : 0.5 * (alpha + alpha_bar);
}

double slack_sigma(const ConicProblem& p, const LocalModel& model) {
  return p.barrier->sigma_measure(model.point, -(p.A.transpose() * model.v));
}

double big_gamma(const ConicProblem& p, const LocalModel& model, double mu, double alpha,
                 double alpha_bar, double sigma) {
  ConePoint s_alpha;
  if (!p.barrier->try_advance(model.point, -alpha * (p.A.transpose() * model.v), s_alpha))
    throw Error(ErrorKind::OutsideCone, "trial point left the feasible set");
  const double factor = xi(alpha_bar, alpha);
  const Vector g_alpha = -p.A * p.barrier->gradient(s_alpha);
  return (1.0 + alpha * sigma) * model.dual_norm(g_alpha - (factor / mu) * p.b);
}

double big_gamma(const ConicProblem& p, const Vector& y, double mu, double alpha) {
  const LocalModel m = evaluate(p, y);
  return big_gamma(p, m, mu, alpha, max_feasible_step(p, m), slack_sigma(p, m));
}

Vector predicted_slack(const ConicProblem& p, const Vector& y) {
  const LocalModel m = evaluate(p, y);
  return m.s - p.A.transpose() * m.v;
}

NullResidual null_residual(const ConicProblem& p, const Vector& y) { return null_residual(p, evaluate(p, y)); }

NullResidual null_residual(const ConicProblem& p, const LocalModel& m) {
  const Vector sv = p.A.transpose() * m.v;
  const Vector r = p.A * p.barrier->hessian(m.point).apply(m.s - sv);
  // In whitened coordinates the local dual norm of A T^T w is the length of
  // the projection of w onto the range of T A^T.
  const Vector w = p.barrier->whitened_point(m.point) - p.barrier->whiten(m.point, sv);
  Matrix ta(w.size(), p.m());
  for (Eigen::Index j = 0; j < p.m(); ++j) ta.col(j) = p.barrier->whiten(m.point, p.A.row(j).transpose());
  Eigen::HouseholderQR<Matrix> qr(ta);
  const Matrix q = qr.householderQ() * Matrix::Identity(ta.rows(), ta.cols());
  return {r.norm(), (q.transpose() * w).norm()};
}

CentralPathResiduals central_path_residuals(const ConicProblem& p, const Vector& y, double mu) {
  const Vector s = slack(p, y);
  CentralPathResiduals r;
  r.x = -mu * p.barrier->gradient(s);
  r.primal_residual = (p.A * r.x - p.b).norm();
  r.gap = p.c.dot(r.x) - p.b.dot(y);
  r.nu_mu = p.nu() * mu;
  return r;
}

}  // namespace conepc
