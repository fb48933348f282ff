#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <optional>

namespace conepc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Cholesky factor of a positive-definite operator, no pivoting.
class Factorization {
 public:
  explicit Factorization(const Matrix& m);

  Vector solve(const Vector& r) const;
  Matrix solve(const Matrix& r) const;
  /// L^{-1} r, where M = L L^T.
  Vector half_solve(const Vector& r) const;
  Matrix half_solve(const Matrix& r) const;
  const Matrix& lower() const { return l_; }
  double log_det() const;
  Eigen::Index size() const { return l_.rows(); }

 private:
  Matrix l_;
};

/// Dense symmetric operator with a write-once cached factorization.
class SymOperator {
 public:
  SymOperator() = default;
  explicit SymOperator(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }
  Vector apply(const Vector& v) const { return m_ * v; }
  double quad(const Vector& v) const { return v.dot(m_ * v); }

  /// Throws NotPositiveDefinite on failure; later calls reuse the result.
  const Factorization& factor() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<Factorization> fact;
    bool failed = false;
  };
  Matrix m_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

enum class NormSide { primal, dual };

Factorization factorize(const SymOperator& m);

/// sqrt<Mv,v> on the primal side, sqrt<M^{-1}v,v> on the dual side.
double weighted_norm(const SymOperator& m, const Vector& v, NormSide side);

/// G = A B^{-1} A^T.
SymOperator schur_metric(const Matrix& a, const SymOperator& b);

/// Extremal eigenvalues of N^{-1/2} M N^{-1/2}, N positive definite.
struct EigenRange {
  double lo;
  double hi;
};
EigenRange relative_spectrum(const SymOperator& m, const SymOperator& n);

/// sup ||Ah||_G / ||h||_B with Ah measured in the dual norm of G.
double operator_norm(const Matrix& a, const SymOperator& g, const SymOperator& b);

}  // namespace conepc
