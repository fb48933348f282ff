#include "conepc/generators.hpp"

#include <cmath>

#include "conepc/error.hpp"
#include "conepc/random.hpp"

namespace conepc {

namespace {

// Shrinks t until y_star - t d is strictly feasible.
Vector interior_start(const Matrix& A, const Vector& c, const BarrierPtr& barrier, const Vector& y_star,
                      const Vector& d) {
  double t = 1.0;
  for (int i = 0; i < 200; ++i, t *= 0.5) {
    Vector y = y_star - t * d;
    if (barrier->contains(c - A.transpose() * y)) return y;
  }
  throw Error(ErrorKind::InfeasibleStart, "could not place a strictly feasible start");
}

double min_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

ConicProblem make_parabola2d() {
  KnownOptimum opt{Vector::Zero(2), Vector::Zero(2), 0.0, std::nullopt};
  return make_problem(-Matrix::Identity(2, 2), Vector{{-1.0, 0.0}}, Vector::Zero(2), ConeDescriptor::parabola2d(),
                      Vector{{1.0, 0.5}}, opt);
}

ConicProblem make_disc2d() {
  KnownOptimum opt{Vector{{1.0, 0.0}}, Vector{{1.0, 0.0}}, 1.0, std::nullopt};
  return make_problem(-Matrix::Identity(2, 2), Vector{{1.0, 0.0}}, Vector::Zero(2), ConeDescriptor::disc2d(),
                      Vector::Zero(2), opt);
}

ConicProblem make_sharp_lp(int m, int n, std::uint64_t seed) {
  if (m < 1 || n <= m) throw Error(ErrorKind::ParameterOutOfRange, "sharp_lp needs 1 <= m < n");
  Rng rng = make_rng(seed, "sharp_lp");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix A = gaussian_matrix(rng, m, n);
    // A 1 = 0 keeps the dual feasible set bounded.
    A.colwise() -= A.rowwise().mean();
    Eigen::FullPivLU<Matrix> lu(A);
    if (lu.rank() < m) continue;
    // Basis: the first m columns after a random permutation.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % static_cast<unsigned>(i + 1)]);
    Matrix AB(m, m);
    for (int i = 0; i < m; ++i) AB.col(i) = A.col(perm[i]);
    if (min_singular_value(AB) < 0.1) continue;

    Vector y_star = gaussian_vector(rng, m);
    Vector s_star = Vector::Zero(n);
    Vector x_star = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (i < m) x_star(perm[i]) = uniform(rng, 0.5, 2.0);
      else s_star(perm[i]) = uniform(rng, 0.5, 2.0);
    }
    Vector c = A.transpose() * y_star + s_star;
    Vector b = A * x_star;
    // d with (A^T d)_B = 1 moves every basic slack off zero.
    Vector d = AB.transpose().fullPivLu().solve(Vector::Ones(m));
    BarrierPtr barrier = make_barrier(ConeDescriptor::orthant(n));
    Vector y0 = interior_start(A, c, barrier, y_star, d);
    KnownOptimum opt{y_star, s_star, b.dot(y_star), x_star};
    return make_problem(A, b, c, ConeDescriptor::orthant(n), y0, opt);
  }
  throw Error(ErrorKind::RankDeficient, "could not draw a well-conditioned basis");
}

ConicProblem make_sharp_sdp(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "sharp_sdp needs n >= 2");
  Rng rng = make_rng(seed, "sharp_sdp");
  const int r = n / 2;
  const int t = n - r;
  const int m = t * (t + 1) / 2;
  const int d = n * (n + 1) / 2;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix q = random_orthogonal(rng, n);
    Matrix q1 = q.leftCols(r);
    Matrix q2 = q.rightCols(t);
    Matrix A(m, d);
    Matrix restricted(m, m);
    for (int i = 0; i < m; ++i) {
      Matrix ai = gaussian_matrix(rng, n, n);
      ai = 0.5 * (ai + ai.transpose());
      // <A_i, I> = 0 keeps the dual feasible set bounded.
      ai.diagonal().array() -= ai.trace() / n;
      A.row(i) = svec(ai).transpose();
      restricted.row(i) = svec(q2.transpose() * ai * q2).transpose();
    }
    if (min_singular_value(restricted) < 0.1) continue;

    Vector d1(r), d2(t);
    for (int i = 0; i < r; ++i) d1(i) = uniform(rng, 0.5, 2.0);
    for (int i = 0; i < t; ++i) d2(i) = uniform(rng, 0.5, 2.0);
    Vector s_star = svec(q1 * d1.asDiagonal() * q1.transpose());
    Vector x_star = svec(q2 * d2.asDiagonal() * q2.transpose());
    Vector y_star = gaussian_vector(rng, m);
    Vector c = A.transpose() * y_star + s_star;
    Vector b = A * x_star;
    // d with Q2^T (A^T d) Q2 = I lifts the zero block of S_*.
    Vector dir = restricted.transpose().fullPivLu().solve(svec(Matrix::Identity(t, t)));
    BarrierPtr barrier = make_barrier(ConeDescriptor::psd(n));
    Vector y0 = interior_start(A, c, barrier, y_star, dir);
    KnownOptimum opt{y_star, s_star, b.dot(y_star), x_star};
    return make_problem(A, b, c, ConeDescriptor::psd(n), y0, opt);
  }
  throw Error(ErrorKind::RankDeficient, "could not draw a nondegenerate instance");
}

ConicProblem make_soc_test(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "soc_test needs n >= 2");
  Rng rng = make_rng(seed, "soc_test");
  // s = (1, y): the unit ball in R^{n-1}.
  Matrix A = Matrix::Zero(n - 1, n);
  A.rightCols(n - 1) = -Matrix::Identity(n - 1, n - 1);
  Vector c = Vector::Unit(n, 0);
  Vector b = gaussian_vector(rng, n - 1);
  const double nb = b.norm();
  Vector y_star = b / nb;
  Vector s_star(n);
  s_star << 1.0, y_star;
  Vector x_star(n);
  x_star << nb, -b;
  KnownOptimum opt{y_star, s_star, nb, x_star};
  return make_problem(A, b, c, ConeDescriptor::soc(n), Vector::Zero(n - 1), opt);
}

ConicProblem make_hankel_poly(int n) {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "hankel_poly needs n >= 1");
  const int d = 2 * n + 1;
  // s = (1, y): moments of a probability measure.
  Matrix A = Matrix::Zero(2 * n, d);
  A.rightCols(2 * n) = -Matrix::Identity(2 * n, 2 * n);
  Vector c = Vector::Unit(d, 0);
  // q(t) = (t - a)^2 (1 + t^2)^(n-1), minimized at t = a with q(a) = 0.
  const double a = 0.5;
  Vector q = Vector::Zero(d);
  q(0) = a * a;
  q(1) = -2.0 * a;
  q(2) = 1.0;
  for (int k = 1; k < n; ++k) {
    Vector next = q;
    for (int i = 2; i < d; ++i) next(i) += q(i - 2);
    q = next;
  }
  Vector b = -q.tail(2 * n);
  Vector y_star(2 * n);
  double p = 1.0;
  for (int k = 0; k < 2 * n; ++k) {
    p *= a;
    y_star(k) = p;
  }
  Vector s_star(d);
  s_star << 1.0, y_star;
  // Start from the moments of the uniform measure on n+2 nodes in [-1, 1].
  Vector y0 = Vector::Zero(2 * n);
  for (int j = 0; j < n + 2; ++j) {
    const double t = -1.0 + 2.0 * j / (n + 1);
    double tk = 1.0;
    for (int k = 0; k < 2 * n; ++k) {
      tk *= t;
      y0(k) += tk / (n + 2);
    }
  }
  KnownOptimum opt{y_star, s_star, q(0), q};
  return make_problem(A, b, c, ConeDescriptor::hankel_poly(n), y0, opt);
}

ConicProblem generate_example(const std::string& name, const std::vector<int>& params, std::uint64_t seed) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw Error(ErrorKind::ParameterOutOfRange,
                  name + " takes " + std::to_string(k) + " integer parameter(s)");
  };
  if (name == "parabola2d") { need(0); return make_parabola2d(); }
  if (name == "disc2d") { need(0); return make_disc2d(); }
  if (name == "sharp_lp") { need(2); return make_sharp_lp(params[0], params[1], seed); }
  if (name == "sharp_sdp") { need(1); return make_sharp_sdp(params[0], seed); }
  if (name == "soc_test") { need(1); return make_soc_test(params[0], seed); }
  if (name == "hankel_poly") { need(1); return make_hankel_poly(params[0]); }
  throw Error(ErrorKind::UnknownExample, name);
}

}  // namespace conepc
