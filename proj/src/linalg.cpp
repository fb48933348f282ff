#include "conepc/linalg.hpp"

#include <cmath>

#include "conepc/error.hpp"

namespace conepc {

Factorization::Factorization(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "Cholesky pivot is not positive");
  l_ = llt.matrixL();
  for (Eigen::Index i = 0; i < l_.rows(); ++i)
    if (!(l_(i, i) > 0.0) || !std::isfinite(l_(i, i)))
      throw Error(ErrorKind::NotPositiveDefinite, "Cholesky pivot is not positive");
}

Vector Factorization::solve(const Vector& r) const {
  Vector z = l_.triangularView<Eigen::Lower>().solve(r);
  return l_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Matrix Factorization::solve(const Matrix& r) const {
  Matrix z = l_.triangularView<Eigen::Lower>().solve(r);
  return l_.transpose().triangularView<Eigen::Upper>().solve(z);
}

Vector Factorization::half_solve(const Vector& r) const {
  return l_.triangularView<Eigen::Lower>().solve(r);
}

Matrix Factorization::half_solve(const Matrix& r) const {
  return l_.triangularView<Eigen::Lower>().solve(r);
}

double Factorization::log_det() const {
  return 2.0 * l_.diagonal().array().log().sum();
}

SymOperator::SymOperator(const Matrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::DimensionMismatch, "operator must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-8 * scale))
    throw Error(ErrorKind::ParameterOutOfRange, "operator is not symmetric");
  m_ = 0.5 * (m + m.transpose());
}

const Factorization& SymOperator::factor() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->fact.emplace(m_);
    } catch (const Error&) {
      cache_->failed = true;
    }
  });
  if (cache_->failed)
    throw Error(ErrorKind::NotPositiveDefinite, "Cholesky pivot is not positive");
  return *cache_->fact;
}

Factorization factorize(const SymOperator& m) { return m.factor(); }

double weighted_norm(const SymOperator& m, const Vector& v, NormSide side) {
  if (v.size() != m.size()) throw Error(ErrorKind::DimensionMismatch, "vector length");
  if (side == NormSide::primal) return std::sqrt(std::max(0.0, m.quad(v)));
  return m.factor().half_solve(v).norm();
}

SymOperator schur_metric(const Matrix& a, const SymOperator& b) {
  if (a.cols() != b.size()) throw Error(ErrorKind::DimensionMismatch, "A columns vs B order");
  Matrix w = b.factor().half_solve(Matrix(a.transpose()));
  SymOperator g(w.transpose() * w);
  try {
    g.factor();
  } catch (const Error&) {
    throw Error(ErrorKind::RankDeficient, "A B^{-1} A^T is singular");
  }
  return g;
}

EigenRange relative_spectrum(const SymOperator& m, const SymOperator& n) {
  const Factorization& f = n.factor();
  Matrix w = f.half_solve(m.matrix());
  Matrix c = f.half_solve(Matrix(w.transpose()));
  c = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

double operator_norm(const Matrix& a, const SymOperator& g, const SymOperator& b) {
  // sup <G^{-1}Ah,Ah> / <Bh,h> = lambda_max(B^{-1/2} A^T G^{-1} A B^{-1/2}).
  Matrix w = g.factor().half_solve(a);
  SymOperator m(w.transpose() * w);
  return std::sqrt(std::max(0.0, relative_spectrum(m, b).hi));
}

}  // namespace conepc
