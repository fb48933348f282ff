#pragma once

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "conepc/linalg.hpp"
#include "conepc/random.hpp"

namespace conepc {

enum class ConeKind { orthant, psd, soc, product, hankel_poly, parabola2d, disc2d };

/// Cone by kind and size. `n` is the orthant/soc dimension, the psd matrix
/// order, or the hankel half degree; unused for the 2D sets.
struct ConeDescriptor {
  ConeKind kind = ConeKind::orthant;
  int n = 1;
  std::vector<ConeDescriptor> parts;

  static ConeDescriptor orthant(int n) { return {ConeKind::orthant, n, {}}; }
  static ConeDescriptor psd(int n) { return {ConeKind::psd, n, {}}; }
  static ConeDescriptor soc(int n) { return {ConeKind::soc, n, {}}; }
  static ConeDescriptor hankel_poly(int n) { return {ConeKind::hankel_poly, n, {}}; }
  static ConeDescriptor parabola2d() { return {ConeKind::parabola2d, 2, {}}; }
  static ConeDescriptor disc2d() { return {ConeKind::disc2d, 2, {}}; }
  static ConeDescriptor product(std::vector<ConeDescriptor> parts);

  /// Embedding dimension.
  int dim() const;
  /// Compact name: orthant4, psd3, soc5, hankel2, parabola2d, disc2d,
  /// product(orthant2,psd2).
  std::string name() const;
  /// Inverse of name(); throws SyntaxError.
  static ConeDescriptor parse(std::string_view text);

  bool operator==(const ConeDescriptor&) const = default;
};

std::string_view kind_name(ConeKind kind);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Interior point together with the data that keeps near-boundary
/// quantities at full relative precision under updates: the Cholesky factor
/// of a psd block, the gap x0 - |xbar| of an soc block, and the
/// points of product parts or of a lifted inner cone.
struct ConePoint {
  Vector x;
  Matrix factor;
  double residual = 0.0;
  std::vector<ConePoint> parts;
};

/// Barrier oracle on the interior of a cone (or of one of the 2D sets).
class Barrier {
 public:
  explicit Barrier(ConeDescriptor cone, double nu) : cone_(std::move(cone)), nu_(nu) {}
  virtual ~Barrier() = default;

  const ConeDescriptor& cone() const { return cone_; }
  int dim() const { return cone_.dim(); }
  double nu() const { return nu_; }

  /// F(tx) = F(x) - nu ln t holds.
  virtual bool log_homogeneous() const { return true; }
  /// Negative curvature is claimed for the family.
  virtual bool negative_curvature() const { return true; }

  /// Signed distance-like quantity, positive exactly on the interior.
  virtual double margin(const Vector& x) const = 0;
  /// margin > 1e-12 (1 + |x|); the validation test for supplied points.
  bool contains(const Vector& x) const;
  /// Where the oracle is defined.
  bool in_domain(const Vector& x) const;

  /// Throws OutsideCone outside the domain.
  ConePoint point(const Vector& x) const;
  /// The point x + d, updated from `p` without re-forming small quantities.
  ConePoint advance(const ConePoint& p, const Vector& d) const;
  /// Non-throwing variant of advance.
  bool try_advance(const ConePoint& p, const Vector& d, ConePoint& out) const;

  double value(const Vector& x) const { return value(point(x)); }
  Vector gradient(const Vector& x) const { return gradient(point(x)); }
  SymOperator hessian(const Vector& x) const { return hessian(point(x)); }
  /// D^3F(x)[h] as a symmetric matrix.
  Matrix third_directional(const Vector& x, const Vector& h) const { return third_directional(point(x), h); }
  /// min{rho >= 0 : rho x - h in K}.
  double sigma_measure(const Vector& x, const Vector& h) const { return sigma_measure(point(x), h); }
  /// sup{a >= 0 : x + a d in K}, possibly +inf.
  double max_step(const Vector& x, const Vector& d) const { return max_step(point(x), d); }

  virtual double value(const ConePoint& p) const = 0;
  virtual Vector gradient(const ConePoint& p) const = 0;
  virtual SymOperator hessian(const ConePoint& p) const = 0;
  virtual Matrix third_directional(const ConePoint& p, const Vector& h) const = 0;
  virtual double sigma_measure(const ConePoint& p, const Vector& h) const = 0;
  virtual double max_step(const ConePoint& p, const Vector& d) const;

  /// T h for a square root with T^T T = hess F(x), evaluated from the
  /// carried factors.
  virtual Vector whiten(const ConePoint& p, const Vector& h) const = 0;
  /// T x, exact for the represented point.
  virtual Vector whitened_point(const ConePoint& p) const = 0;

  /// x with s = -grad F(x) for the conjugate barrier; NoExplicitConjugate
  /// where no closed form is available.
  virtual Vector conjugate_point(const Vector& s) const = 0;

  virtual Vector random_interior(Rng& rng) const = 0;
  /// Random element of the closed cone, boundary points included.
  virtual Vector random_cone_element(Rng& rng) const = 0;

 protected:
  /// Return false outside the domain.
  virtual bool make_point(const Vector& x, ConePoint& out) const = 0;
  virtual bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const = 0;

 private:
  ConeDescriptor cone_;
  double nu_;
};

using BarrierPtr = std::shared_ptr<const Barrier>;

BarrierPtr make_barrier(const ConeDescriptor& cone);

/// Scaled symmetric vectorization: off-diagonals times sqrt(2).
Vector svec(const Matrix& m);
Matrix smat(const Vector& v, int n);
int svec_order(Eigen::Index len);

/// Hankel matrix H(s) of order n+1 from s in R^{2n+1}.
Matrix hankel_matrix(const Vector& s);

/// Generic bisection for sigma on cone membership; cross-check only.
double sigma_by_bisection(const Barrier& barrier, const Vector& x, const Vector& h,
                          double rel_tol = 1e-10);

}  // namespace conepc
