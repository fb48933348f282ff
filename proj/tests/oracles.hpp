#pragma once

// Reference computations that avoid the library code paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline bool close(double a, double b, double rel, double abs = 0.0) {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

inline double rel_err(const Mat& a, const Mat& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

/// Eigenvalues of [[a, b], [b, d]] from the characteristic polynomial.
inline std::pair<double, double> eig2(double a, double b, double d) {
  const double tr = a + d;
  const double det = a * d - b * b;
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

// ---------------------------------------------------------------- LP vertex enumeration

struct LpVertex {
  Vec y;
  double value = -std::numeric_limits<double>::infinity();
  int optimal_vertices = 0;
  int feasible_vertices = 0;
};

/// max <b,y> subject to c - A^T y >= 0 over every basic solution: choose m
/// of the n constraints tight and solve the square system.
inline LpVertex lp_vertex_enumeration(const Mat& A, const Vec& b, const Vec& c, double tol = 1e-9) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  LpVertex best;
  std::vector<Vec> values;
  std::vector<int> idx(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      Mat M(m, m);
      Vec rhs(m);
      for (int i = 0; i < m; ++i) {
        M.row(i) = A.col(idx[i]).transpose();
        rhs(i) = c(idx[i]);
      }
      Eigen::FullPivLU<Mat> lu(M);
      if (lu.rank() < m) return;
      Vec y = lu.solve(rhs);
      Vec s = c - A.transpose() * y;
      if (s.minCoeff() < -tol * (1.0 + c.cwiseAbs().maxCoeff())) return;
      ++best.feasible_vertices;
      const double v = b.dot(y);
      if (v > best.value + 1e-9 * (1.0 + std::abs(v))) {
        best.value = v;
        best.y = y;
        best.optimal_vertices = 1;
      } else if (std::abs(v - best.value) <= 1e-9 * (1.0 + std::abs(v)) && (y - best.y).norm() > 1e-7) {
        ++best.optimal_vertices;
      }
      return;
    }
    for (int j = start; j < n; ++j) {
      idx[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// ---------------------------------------------------------------- unit disc closed forms

/// theta^2(y) = 2 y2^2 / (1 - y1^2 + y2^2) for b = (1, 0).
inline double disc_theta2(double y1, double y2) { return 2.0 * y2 * y2 / (1.0 - y1 * y1 + y2 * y2); }

inline Vec disc_prediction(const Vec& y) { return 2.0 * y / (1.0 + y.squaredNorm()); }

/// y1^2 + (2 - beta^2)/beta^2 y2^2, compared with 1.
inline double disc_ellipse(double y1, double y2, double beta) {
  return y1 * y1 + (2.0 - beta * beta) / (beta * beta) * y2 * y2;
}

inline Vec disc_gradient(const Vec& y) { return 2.0 * y / (1.0 - y.squaredNorm()); }

inline Mat disc_hessian(const Vec& y) {
  const double w = 1.0 - y.squaredNorm();
  return 2.0 * Mat::Identity(2, 2) / w + 4.0 * y * y.transpose() / (w * w);
}

// ---------------------------------------------------------------- matrices

/// tr(X^{-1} H X^{-1} H) with an explicit inverse.
inline double psd_hessian_form(const Mat& X, const Mat& H) {
  const Mat Xi = X.inverse();
  return (Xi * H * Xi * H).trace();
}

/// max eigenvalue of X^{-1/2} H X^{-1/2} via the generalized eigenproblem.
inline double psd_sigma(const Mat& X, const Mat& H) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(H, X);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

/// Bisection for the largest t with X + tD positive semidefinite.
inline double psd_max_step_bisection(const Mat& X, const Mat& D, double hi = 1e6) {
  auto inside = [&](double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(X + t * D);
    return es.eigenvalues().minCoeff() > 0.0;
  };
  if (inside(hi)) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

/// Bisection for min{rho >= 0 : rho x - h >= 0} on the orthant.
inline double orthant_sigma_bisection(const Vec& x, const Vec& h) {
  auto ok = [&](double r) { return ((r * x - h).array() >= 0.0).all(); };
  if (ok(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!ok(hi)) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------- finite differences

/// Richardson-extrapolated central difference of a vector-valued map.
inline Mat fd_jacobian(const std::function<Vec(const Vec&)>& g, const Vec& x, double t) {
  const Vec g0 = g(x);
  Mat J(g0.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vec e = Vec::Unit(x.size(), j);
    const Vec d1 = (g(x + t * e) - g(x - t * e)) / (2.0 * t);
    const Vec d2 = (g(x + 0.5 * t * e) - g(x - 0.5 * t * e)) / t;
    J.col(j) = (4.0 * d2 - d1) / 3.0;
  }
  return J;
}

/// Same, for a matrix-valued map along one direction.
inline Mat fd_directional(const std::function<Mat(const Vec&)>& g, const Vec& x, const Vec& h, double t) {
  const Mat d1 = (g(x + t * h) - g(x - t * h)) / (2.0 * t);
  const Mat d2 = (g(x + 0.5 * t * h) - g(x - 0.5 * t * h)) / t;
  return (4.0 * d2 - d1) / 3.0;
}

// ---------------------------------------------------------------- scalar Newton

/// Damped Newton for 1/(1-y) = 1/mu on y < 1, written out by hand.
inline double one_d_center(double y, double mu, double tol) {
  for (int i = 0; i < 200; ++i) {
    const double w = 1.0 - y;
    const double g = 1.0 / w - 1.0 / mu;
    const double h = 1.0 / (w * w);
    const double lambda = std::abs(g) / std::sqrt(h);
    if (lambda <= tol) break;
    const double step = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
    y -= step * g / h;
  }
  return y;
}

}  // namespace oracle
