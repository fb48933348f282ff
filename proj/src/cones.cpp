#include "conepc/cones.hpp"

#include <cctype>
#include <cmath>

#include "conepc/error.hpp"

namespace conepc {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

double closed_margin_tol(const Vector& x) { return 1e-12 * (1.0 + x.norm()); }

}  // namespace

// ---------------------------------------------------------------- descriptor

ConeDescriptor ConeDescriptor::product(std::vector<ConeDescriptor> parts) {
  if (parts.empty()) throw Error(ErrorKind::DimensionMismatch, "empty product cone");
  ConeDescriptor d;
  d.kind = ConeKind::product;
  d.n = static_cast<int>(parts.size());
  d.parts = std::move(parts);
  return d;
}

int ConeDescriptor::dim() const {
  switch (kind) {
    case ConeKind::orthant:
    case ConeKind::soc: return n;
    case ConeKind::psd: return n * (n + 1) / 2;
    case ConeKind::hankel_poly: return 2 * n + 1;
    case ConeKind::parabola2d:
    case ConeKind::disc2d: return 2;
    case ConeKind::product: {
      int total = 0;
      for (const auto& p : parts) total += p.dim();
      return total;
    }
  }
  return 0;
}

std::string_view kind_name(ConeKind kind) {
  switch (kind) {
    case ConeKind::orthant: return "orthant";
    case ConeKind::psd: return "psd";
    case ConeKind::soc: return "soc";
    case ConeKind::product: return "product";
    case ConeKind::hankel_poly: return "hankel";
    case ConeKind::parabola2d: return "parabola2d";
    case ConeKind::disc2d: return "disc2d";
  }
  return "";
}

std::string ConeDescriptor::name() const {
  switch (kind) {
    case ConeKind::parabola2d:
    case ConeKind::disc2d: return std::string(kind_name(kind));
    case ConeKind::product: {
      std::string out = "product(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i].name();
      }
      return out + ")";
    }
    default: return std::string(kind_name(kind)) + std::to_string(n);
  }
}

namespace {

struct NameParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, "cone '" + std::string(text) + "': " + msg);
  }

  ConeDescriptor parse_one() {
    std::size_t start = pos;
    while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string word(text.substr(start, pos - start));
    if (word == "parabola" || word == "disc") {
      if (text.substr(pos, 2) != "2d") fail("expected 2d");
      pos += 2;
      return word == "disc" ? ConeDescriptor::disc2d() : ConeDescriptor::parabola2d();
    }
    if (word == "product") {
      if (pos >= text.size() || text[pos] != '(') fail("expected '('");
      ++pos;
      std::vector<ConeDescriptor> parts;
      while (true) {
        parts.push_back(parse_one());
        if (pos >= text.size()) fail("unterminated product");
        if (text[pos] == ',') { ++pos; continue; }
        if (text[pos] == ')') { ++pos; break; }
        fail("unexpected character");
      }
      return ConeDescriptor::product(std::move(parts));
    }
    std::size_t nstart = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (nstart == pos) fail("missing size");
    int n = std::stoi(std::string(text.substr(nstart, pos - nstart)));
    if (n <= 0) fail("size must be positive");
    if (word == "orthant") return ConeDescriptor::orthant(n);
    if (word == "psd") return ConeDescriptor::psd(n);
    if (word == "soc") {
      if (n < 2) fail("soc needs dimension >= 2");
      return ConeDescriptor::soc(n);
    }
    if (word == "hankel" || word == "hankel_poly") return ConeDescriptor::hankel_poly(n);
    fail("unknown kind '" + word + "'");
  }
};

}  // namespace

ConeDescriptor ConeDescriptor::parse(std::string_view text) {
  NameParser p{text};
  ConeDescriptor d = p.parse_one();
  if (p.pos != text.size()) p.fail("trailing characters");
  return d;
}

// ---------------------------------------------------------------- helpers

Vector svec(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Vector v(n * (n + 1) / 2);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) v(k++) = (i == j) ? m(i, i) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  return v;
}

Matrix smat(const Vector& v, int n) {
  if (v.size() != n * (n + 1) / 2) throw Error(ErrorKind::DimensionMismatch, "svec length");
  Matrix m(n, n);
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) {
      const double a = v(k++);
      if (i == j) {
        m(i, i) = a;
      } else {
        m(i, j) = a / kSqrt2;
        m(j, i) = a / kSqrt2;
      }
    }
  return m;
}

int svec_order(Eigen::Index len) {
  int n = static_cast<int>(std::lround((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0));
  if (n * (n + 1) / 2 != len) throw Error(ErrorKind::DimensionMismatch, "not an svec length");
  return n;
}

Matrix hankel_matrix(const Vector& s) {
  if (s.size() % 2 != 1) throw Error(ErrorKind::DimensionMismatch, "hankel vector has even length");
  const int m = static_cast<int>(s.size() / 2) + 1;
  Matrix h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = s(i + j);
  return h;
}

bool Barrier::in_domain(const Vector& x) const {
  if (x.size() != dim() || !x.allFinite()) return false;
  ConePoint p;
  return make_point(x, p);
}

bool Barrier::contains(const Vector& x) const {
  return in_domain(x) && margin(x) > 1e-12 * (1.0 + x.norm());
}

ConePoint Barrier::point(const Vector& x) const {
  if (x.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "point has wrong length for " + cone_.name());
  ConePoint p;
  if (!x.allFinite() || !make_point(x, p))
    throw Error(ErrorKind::OutsideCone, "point not interior to " + cone_.name());
  return p;
}

bool Barrier::try_advance(const ConePoint& p, const Vector& d, ConePoint& out) const {
  if (d.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "direction has wrong length");
  return d.allFinite() && advance_point(p, d, out);
}

ConePoint Barrier::advance(const ConePoint& p, const Vector& d) const {
  ConePoint out;
  if (!try_advance(p, d, out)) throw Error(ErrorKind::OutsideCone, "step leaves " + cone_.name());
  return out;
}

double Barrier::max_step(const ConePoint& p, const Vector& d) const {
  const double sigma = sigma_measure(p, -d);
  return sigma > 0.0 ? 1.0 / sigma : kInfinity;
}

double sigma_by_bisection(const Barrier& barrier, const Vector& x, const Vector& h, double rel_tol) {
  auto member = [&](double rho) {
    Vector z = rho * x - h;
    return barrier.margin(z) >= -closed_margin_tol(z);
  };
  if (member(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!member(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return kInfinity;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

namespace {

// ---------------------------------------------------------------- orthant

class OrthantBarrier final : public Barrier {
 public:
  explicit OrthantBarrier(int n) : Barrier(ConeDescriptor::orthant(n), n) {}

  double margin(const Vector& x) const override { return x.minCoeff(); }

  double value(const ConePoint& p) const override { return -p.x.array().log().sum(); }
  Vector gradient(const ConePoint& p) const override { return -p.x.cwiseInverse(); }
  SymOperator hessian(const ConePoint& p) const override {
    return SymOperator(Matrix(p.x.array().square().inverse().matrix().asDiagonal()));
  }
  Matrix third_directional(const ConePoint& p, const Vector& h) const override {
    return Matrix((-2.0 * h.array() / p.x.array().cube()).matrix().asDiagonal());
  }
  double sigma_measure(const ConePoint& p, const Vector& h) const override {
    return std::max(0.0, (h.array() / p.x.array()).maxCoeff());
  }
  Vector conjugate_point(const Vector& s) const override { return point(s).x.cwiseInverse(); }

  Vector random_interior(Rng& rng) const override {
    Vector x(dim());
    for (int i = 0; i < dim(); ++i) x(i) = std::exp(uniform(rng, -1.5, 1.5));
    return x;
  }
  Vector random_cone_element(Rng& rng) const override {
    Vector u(dim());
    for (int i = 0; i < dim(); ++i) u(i) = uniform(rng, 0.0, 1.0) < 0.25 ? 0.0 : uniform(rng, 0.0, 2.0);
    return u;
  }

  Vector whiten(const ConePoint& p, const Vector& h) const override { return h.cwiseQuotient(p.x); }
  Vector whitened_point(const ConePoint&) const override { return Vector::Ones(dim()); }

 protected:
  bool make_point(const Vector& x, ConePoint& out) const override {
    if (!(x.minCoeff() > 0.0)) return false;
    out.x = x;
    return true;
  }
  bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const override {
    return make_point(p.x + d, out);
  }
};

// ---------------------------------------------------------------- psd

bool lower_cholesky(const Matrix& m, Matrix& l) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    if (!(l(i, i) > 0.0) || !std::isfinite(l(i, i))) return false;
  return true;
}

class PsdBarrier final : public Barrier {
 public:
  explicit PsdBarrier(int n) : Barrier(ConeDescriptor::psd(n), n), order_(n) {}

  double margin(const Vector& x) const override {
    Eigen::SelfAdjointEigenSolver<Matrix> es(smat(x, order_), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }

  double value(const ConePoint& p) const override {
    return -2.0 * p.factor.diagonal().array().log().sum();
  }
  Vector gradient(const ConePoint& p) const override { return -svec(inverse(p)); }
  SymOperator hessian(const ConePoint& p) const override {
    const Matrix xi = inverse(p);
    const int d = dim();
    Matrix h(d, d);
    for (int a = 0; a < d; ++a) {
      Matrix e = smat(Vector::Unit(d, a), order_);
      h.col(a) = svec(xi * e * xi);
    }
    return SymOperator(0.5 * (h + h.transpose()));
  }
  Matrix third_directional(const ConePoint& p, const Vector& hv) const override {
    const Matrix xi = inverse(p);
    const Matrix q = xi * smat(hv, order_) * xi;
    const int d = dim();
    Matrix t(d, d);
    for (int a = 0; a < d; ++a) {
      Matrix g = smat(Vector::Unit(d, a), order_);
      Matrix r = q * g * xi;
      t.col(a) = -svec(r + r.transpose());
    }
    return 0.5 * (t + t.transpose());
  }
  double sigma_measure(const ConePoint& p, const Vector& h) const override {
    Eigen::SelfAdjointEigenSolver<Matrix> es(congruence(p, h), Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(order_ - 1));
  }
  Vector conjugate_point(const Vector& s) const override { return svec(inverse(point(s))); }

  Vector random_interior(Rng& rng) const override {
    Matrix q = random_orthogonal(rng, order_);
    Vector lam(order_);
    for (int i = 0; i < order_; ++i) lam(i) = std::exp(uniform(rng, -1.5, 1.5));
    return svec(q * lam.asDiagonal() * q.transpose());
  }
  Vector random_cone_element(Rng& rng) const override {
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(order_));
    Matrix w = gaussian_matrix(rng, order_, r);
    return svec(w * w.transpose() / r);
  }

  Vector whiten(const ConePoint& p, const Vector& h) const override { return svec(congruence(p, h)); }
  Vector whitened_point(const ConePoint&) const override {
    return svec(Matrix(Matrix::Identity(order_, order_)));
  }

 protected:
  bool make_point(const Vector& x, ConePoint& out) const override {
    if (!lower_cholesky(smat(x, order_), out.factor)) return false;
    out.x = x;
    return true;
  }
  // X + D = L (I + L^{-1} D L^{-T}) L^T, refactored multiplicatively.
  bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const override {
    Matrix w = congruence(p, d);
    w.diagonal().array() += 1.0;
    Matrix m;
    if (!lower_cholesky(w, m)) return false;
    out.factor = p.factor * m;
    out.x = p.x + d;
    return true;
  }

 private:
  // L^{-1} H L^{-T}.
  Matrix congruence(const ConePoint& p, const Vector& h) const {
    const auto l = p.factor.triangularView<Eigen::Lower>();
    Matrix w = l.solve(smat(h, order_));
    Matrix c = l.solve(Matrix(w.transpose()));
    return 0.5 * (c + c.transpose());
  }
  Matrix inverse(const ConePoint& p) const {
    Matrix li = p.factor.triangularView<Eigen::Lower>().solve(Matrix(Matrix::Identity(order_, order_)));
    Matrix xi = li.transpose() * li;
    return 0.5 * (xi + xi.transpose());
  }
  int order_;
};

// ---------------------------------------------------------------- soc

// The point carries delta = x0 - |xbar|; x0 is never re-formed from it, so
// q = delta (2|xbar| + delta) keeps its relative precision near the boundary.
class SocBarrier final : public Barrier {
 public:
  explicit SocBarrier(int n) : Barrier(ConeDescriptor::soc(n), 2.0) {}

  double margin(const Vector& x) const override { return x(0) - x.tail(dim() - 1).norm(); }

  double value(const ConePoint& p) const override { return -std::log(quad(p)); }
  Vector gradient(const ConePoint& p) const override { return -2.0 * jmul(p.x) / quad(p); }
  SymOperator hessian(const ConePoint& p) const override {
    const double q = quad(p);
    const Vector w = jmul(p.x);
    Matrix h = 4.0 * w * w.transpose() / (q * q);
    h.diagonal() -= 2.0 * jdiag() / q;
    return SymOperator(h);
  }
  Matrix third_directional(const ConePoint& p, const Vector& h) const override {
    const double q = quad(p);
    const Vector w = jmul(p.x);
    const Vector jh = jmul(h);
    const double a = w.dot(h);
    Matrix t = 4.0 * (jh * w.transpose() + w * jh.transpose()) / (q * q) -
               16.0 * a * w * w.transpose() / (q * q * q);
    t.diagonal() += 4.0 * a * jdiag() / (q * q);
    return t;
  }
  double sigma_measure(const ConePoint& p, const Vector& h) const override {
    // -h in K means rho = 0 already works.
    if (-h(0) >= h.tail(dim() - 1).norm()) return 0.0;
    const double qx = quad(p);
    const double qh = (h(0) - h.tail(dim() - 1).norm()) * (h(0) + h.tail(dim() - 1).norm());
    const double a = jmul(p.x).dot(h);
    const double disc = std::sqrt(std::max(0.0, a * a - qx * qh));
    // larger root of qx r^2 - 2 a r + qh
    const double r = (a >= 0.0) ? (a + disc) / qx : qh / (a - disc);
    return std::max(0.0, r);
  }
  Vector conjugate_point(const Vector& s) const override {
    const ConePoint p = point(s);
    return 2.0 * jmul(s) / quad(p);
  }

  Vector random_interior(Rng& rng) const override {
    Vector x(dim());
    Vector bar = gaussian_vector(rng, dim() - 1);
    x(0) = bar.norm() + std::exp(uniform(rng, -1.5, 1.0));
    x.tail(dim() - 1) = bar;
    return x;
  }
  Vector random_cone_element(Rng& rng) const override {
    Vector u(dim());
    Vector bar = gaussian_vector(rng, dim() - 1);
    u(0) = bar.norm() + (uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : uniform(rng, 0.0, 1.0));
    u.tail(dim() - 1) = bar;
    return u;
  }

  // sqrt(2) P(x^{-1/2}) h in the Jordan frame of x; eigenvalues delta and
  // 2|xbar| + delta.
  Vector whiten(const ConePoint& p, const Vector& h) const override {
    const Eigen::Index k = dim() - 1;
    const double r = p.x.tail(k).norm();
    const Vector u = r > 0.0 ? Vector(p.x.tail(k) / r) : Vector(Vector::Unit(k, 0));
    const double l1 = p.residual;
    const double l2 = 2.0 * r + p.residual;
    const double h1 = u.dot(h.tail(k));
    const Vector perp = h.tail(k) - h1 * u;
    const double a1 = (h(0) - h1) / l1;
    const double a2 = (h(0) + h1) / l2;
    Vector t(dim());
    t(0) = 0.5 * (a1 + a2);
    t.tail(k) = 0.5 * (a2 - a1) * u + perp / std::sqrt(l1 * l2);
    return kSqrt2 * t;
  }
  Vector whitened_point(const ConePoint&) const override { return kSqrt2 * Vector::Unit(dim(), 0); }

 protected:
  bool make_point(const Vector& x, ConePoint& out) const override {
    const double delta = x(0) - x.tail(dim() - 1).norm();
    if (!(delta > 0.0)) return false;
    out.x = x;
    out.residual = delta;
    return true;
  }
  bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const override {
    const Eigen::Index k = dim() - 1;
    const Vector bar = p.x.tail(k);
    const Vector dbar = d.tail(k);
    const Vector next = bar + dbar;
    const double denom = bar.norm() + next.norm();
    double delta = p.residual + d(0);
    if (denom > 0.0) delta -= (2.0 * bar.dot(dbar) + dbar.squaredNorm()) / denom;
    if (!(delta > 0.0)) return false;
    out.x = p.x + d;
    out.residual = delta;
    return true;
  }

 private:
  double quad(const ConePoint& p) const {
    return p.residual * (2.0 * p.x.tail(dim() - 1).norm() + p.residual);
  }
  static Vector jmul(const Vector& x) {
    Vector y = -x;
    y(0) = x(0);
    return y;
  }
  Vector jdiag() const {
    Vector j = -Vector::Ones(dim());
    j(0) = 1.0;
    return j;
  }
};

// ---------------------------------------------------------------- product

class ProductBarrier final : public Barrier {
 public:
  ProductBarrier(const ConeDescriptor& cone, std::vector<BarrierPtr> parts)
      : Barrier(cone, total_nu(parts)), parts_(std::move(parts)) {
    int off = 0;
    for (const auto& p : parts_) {
      offsets_.push_back(off);
      off += p->dim();
    }
  }

  bool log_homogeneous() const override {
    for (const auto& p : parts_)
      if (!p->log_homogeneous()) return false;
    return true;
  }
  bool negative_curvature() const override {
    for (const auto& p : parts_)
      if (!p->negative_curvature()) return false;
    return true;
  }

  double margin(const Vector& x) const override {
    double m = kInfinity;
    for (std::size_t i = 0; i < parts_.size(); ++i) m = std::min(m, parts_[i]->margin(seg(x, i)));
    return m;
  }
  double value(const ConePoint& p) const override {
    double v = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) v += parts_[i]->value(p.parts[i]);
    return v;
  }
  Vector gradient(const ConePoint& p) const override {
    Vector g(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      g.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->gradient(p.parts[i]);
    return g;
  }
  SymOperator hessian(const ConePoint& p) const override {
    Matrix h = Matrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const int d = parts_[i]->dim();
      h.block(offsets_[i], offsets_[i], d, d) = parts_[i]->hessian(p.parts[i]).matrix();
    }
    return SymOperator(h);
  }
  Matrix third_directional(const ConePoint& p, const Vector& h) const override {
    Matrix t = Matrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const int d = parts_[i]->dim();
      t.block(offsets_[i], offsets_[i], d, d) = parts_[i]->third_directional(p.parts[i], seg(h, i));
    }
    return t;
  }
  double sigma_measure(const ConePoint& p, const Vector& h) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      s = std::max(s, parts_[i]->sigma_measure(p.parts[i], seg(h, i)));
    return s;
  }
  double max_step(const ConePoint& p, const Vector& d) const override {
    double a = kInfinity;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      a = std::min(a, parts_[i]->max_step(p.parts[i], seg(d, i)));
    return a;
  }
  Vector conjugate_point(const Vector& s) const override {
    point(s);
    Vector x(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      x.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->conjugate_point(seg(s, i));
    return x;
  }
  Vector random_interior(Rng& rng) const override {
    Vector x(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      x.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->random_interior(rng);
    return x;
  }
  Vector random_cone_element(Rng& rng) const override {
    Vector x(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      x.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->random_cone_element(rng);
    return x;
  }

  Vector whiten(const ConePoint& p, const Vector& h) const override {
    Vector t(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      t.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->whiten(p.parts[i], seg(h, i));
    return t;
  }
  Vector whitened_point(const ConePoint& p) const override {
    Vector t(dim());
    for (std::size_t i = 0; i < parts_.size(); ++i)
      t.segment(offsets_[i], parts_[i]->dim()) = parts_[i]->whitened_point(p.parts[i]);
    return t;
  }

 protected:
  bool make_point(const Vector& x, ConePoint& out) const override {
    out.parts.assign(parts_.size(), ConePoint{});
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const Vector xi = seg(x, i);
      if (!parts_[i]->in_domain(xi)) return false;
      out.parts[i] = parts_[i]->point(xi);
    }
    out.x = x;
    return true;
  }
  bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const override {
    out.parts.assign(parts_.size(), ConePoint{});
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (!parts_[i]->try_advance(p.parts[i], seg(d, i), out.parts[i])) return false;
    out.x = p.x + d;
    return true;
  }

 private:
  static double total_nu(const std::vector<BarrierPtr>& parts) {
    double nu = 0.0;
    for (const auto& p : parts) nu += p->nu();
    return nu;
  }
  Vector seg(const Vector& x, std::size_t i) const { return x.segment(offsets_[i], parts_[i]->dim()); }

  std::vector<BarrierPtr> parts_;
  std::vector<int> offsets_;
};

// ---------------------------------------------------------------- lifted

/// F(x) = F_inner(L x + e) for an injective L.
class LiftedBarrier : public Barrier {
 public:
  LiftedBarrier(ConeDescriptor cone, double nu, BarrierPtr inner, Matrix lift, Vector offset)
      : Barrier(std::move(cone), nu), inner_(std::move(inner)), l_(std::move(lift)), e_(std::move(offset)) {}

  double margin(const Vector& x) const override { return inner_->margin(lift(x)); }
  double value(const ConePoint& p) const override { return inner_->value(p.parts[0]); }
  Vector gradient(const ConePoint& p) const override {
    return l_.transpose() * inner_->gradient(p.parts[0]);
  }
  SymOperator hessian(const ConePoint& p) const override {
    return SymOperator(l_.transpose() * inner_->hessian(p.parts[0]).matrix() * l_);
  }
  Matrix third_directional(const ConePoint& p, const Vector& h) const override {
    return l_.transpose() * inner_->third_directional(p.parts[0], l_ * h) * l_;
  }
  double sigma_measure(const ConePoint& p, const Vector& h) const override {
    return inner_->sigma_measure(p.parts[0], l_ * h);
  }
  double max_step(const ConePoint& p, const Vector& d) const override {
    return inner_->max_step(p.parts[0], l_ * d);
  }
  Vector conjugate_point(const Vector&) const override {
    throw Error(ErrorKind::NoExplicitConjugate, cone().name());
  }

  Vector whiten(const ConePoint& p, const Vector& h) const override {
    return inner_->whiten(p.parts[0], l_ * h);
  }
  Vector whitened_point(const ConePoint& p) const override {
    Vector t = inner_->whitened_point(p.parts[0]);
    if (e_.squaredNorm() > 0.0) t -= inner_->whiten(p.parts[0], e_);
    return t;
  }

 protected:
  bool make_point(const Vector& x, ConePoint& out) const override {
    const Vector z = lift(x);
    if (!inner_->in_domain(z)) return false;
    out.parts.assign(1, inner_->point(z));
    out.x = x;
    return true;
  }
  bool advance_point(const ConePoint& p, const Vector& d, ConePoint& out) const override {
    out.parts.assign(1, ConePoint{});
    if (!inner_->try_advance(p.parts[0], l_ * d, out.parts[0])) return false;
    out.x = p.x + d;
    return true;
  }
  Vector lift(const Vector& x) const {
    if (x.size() != l_.cols()) throw Error(ErrorKind::DimensionMismatch, "point has wrong length");
    return l_ * x + e_;
  }

 private:
  BarrierPtr inner_;
  Matrix l_;
  Vector e_;
};

Matrix hankel_lift(int n) {
  const int m = n + 1;
  const int d = 2 * n + 1;
  Matrix l(m * (m + 1) / 2, d);
  for (int k = 0; k < d; ++k) l.col(k) = svec(hankel_matrix(Vector::Unit(d, k)));
  return l;
}

class HankelBarrier final : public LiftedBarrier {
 public:
  explicit HankelBarrier(int n)
      : LiftedBarrier(ConeDescriptor::hankel_poly(n), n + 1, std::make_shared<PsdBarrier>(n + 1),
                      hankel_lift(n), Vector::Zero((n + 1) * (n + 2) / 2)),
        n_(n) {}

  // Atoms stratified on the arcsine law over [-1, 1] keep H(s) well
  // conditioned; uniform atoms reach condition numbers near 1e6 at n = 6.
  Vector random_interior(Rng& rng) const override {
    const int atoms = 2 * (n_ + 1);
    Vector s = Vector::Zero(2 * n_ + 1);
    for (int a = 0; a < atoms; ++a) {
      const double t = std::cos(M_PI * (a + uniform(rng, 0.2, 0.8)) / atoms);
      add_atom(s, t, uniform(rng, 0.5, 1.5) / atoms);
    }
    return s;
  }
  Vector random_cone_element(Rng& rng) const override {
    const int atoms = 1 + static_cast<int>(rng() % static_cast<unsigned>(n_ + 1));
    Vector s = Vector::Zero(2 * n_ + 1);
    for (int a = 0; a < atoms; ++a) add_atom(s, uniform(rng, -1.5, 1.5), uniform(rng, 0.1, 1.0));
    return s;
  }

 private:
  // Adds w (1, t, ..., t^{2n}).
  void add_atom(Vector& s, double t, double w) const {
    double p = w;
    for (int k = 0; k <= 2 * n_; ++k) {
      s(k) += p;
      p *= t;
    }
  }
  int n_;
};

// y -> (1, y) in soc(3); barrier -ln(1 - |y|^2).
class DiscBarrier final : public LiftedBarrier {
 public:
  DiscBarrier()
      : LiftedBarrier(ConeDescriptor::disc2d(), 2.0, std::make_shared<SocBarrier>(3),
                      (Matrix(3, 2) << 0, 0, 1, 0, 0, 1).finished(), Vector::Unit(3, 0)) {}

  bool log_homogeneous() const override { return false; }
  bool negative_curvature() const override { return false; }

  Vector random_interior(Rng& rng) const override {
    const double r = 0.97 * std::sqrt(uniform(rng, 0.0, 1.0));
    const double t = uniform(rng, 0.0, 2.0 * M_PI);
    return Vector{{r * std::cos(t), r * std::sin(t)}};
  }
  Vector random_cone_element(Rng& rng) const override { return random_interior(rng); }
};

// y -> ((y1+1)/2, (y1-1)/2, y2 | y2) in soc(3) x orthant(1);
// barrier -ln(y1 - y2^2) - ln y2.
class ParabolaBarrier final : public LiftedBarrier {
 public:
  ParabolaBarrier()
      : LiftedBarrier(ConeDescriptor::parabola2d(), 2.0,
                      make_barrier(ConeDescriptor::product({ConeDescriptor::soc(3), ConeDescriptor::orthant(1)})),
                      (Matrix(4, 2) << 0.5, 0, 0.5, 0, 0, 1, 0, 1).finished(), Vector{{0.5, -0.5, 0.0, 0.0}}) {}

  bool log_homogeneous() const override { return false; }
  bool negative_curvature() const override { return false; }

  Vector random_interior(Rng& rng) const override {
    const double y2 = uniform(rng, 0.05, 1.5);
    return Vector{{y2 * y2 + uniform(rng, 0.05, 1.5), y2}};
  }
  Vector random_cone_element(Rng& rng) const override { return random_interior(rng); }
};

}  // namespace

BarrierPtr make_barrier(const ConeDescriptor& cone) {
  switch (cone.kind) {
    case ConeKind::orthant: return std::make_shared<OrthantBarrier>(cone.n);
    case ConeKind::psd: return std::make_shared<PsdBarrier>(cone.n);
    case ConeKind::soc:
      if (cone.n < 2) throw Error(ErrorKind::DimensionMismatch, "soc needs dimension >= 2");
      return std::make_shared<SocBarrier>(cone.n);
    case ConeKind::hankel_poly: return std::make_shared<HankelBarrier>(cone.n);
    case ConeKind::disc2d: return std::make_shared<DiscBarrier>();
    case ConeKind::parabola2d: return std::make_shared<ParabolaBarrier>();
    case ConeKind::product: {
      std::vector<BarrierPtr> parts;
      for (const auto& p : cone.parts) parts.push_back(make_barrier(p));
      return std::make_shared<ProductBarrier>(cone, std::move(parts));
    }
  }
  throw Error(ErrorKind::UnknownExample, "cone kind");
}

}  // namespace conepc
