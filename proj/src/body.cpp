#include "lpaffine/body.hpp"

#include "lpaffine/errors.hpp"
#include "lpaffine/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lpaffine {

namespace detail {

// Evaluators work on the 1-homogeneous extensions; Hessians are n×n with
// H·u = 0 at u.
class BodyModel {
 public:
  virtual ~BodyModel() = default;
  virtual int dim() const = 0;
  virtual BodyKind kind() const = 0;
  virtual Smoothness smoothness() const { return Smoothness::c2plus; }

  virtual double support(const Vec& u) const = 0;
  virtual Vec support_gradient(const Vec& u) const = 0;
  virtual Mat support_hessian(const Vec& u) const = 0;
  virtual double gauge(const Vec& x) const = 0;
  virtual Vec gauge_gradient(const Vec& x) const = 0;
  virtual Mat gauge_hessian(const Vec& x) const = 0;

  virtual std::optional<double> volume() const = 0;
  virtual std::optional<double> polar_volume() const = 0;
  virtual std::vector<Vec> support_singular() const { return {}; }
  virtual std::vector<Vec> gauge_singular() const { return {}; }
  virtual std::vector<Vec> vertices() const { return {}; }
  virtual std::string describe() const = 0;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hessian of x ↦ sqrt(xᵀMx).
Mat quadratic_norm_hessian(const Mat& M, const Vec& x) {
  const double v = std::sqrt(x.dot(M * x));
  const Vec Mx = M * x;
  return M / v - Mx * Mx.transpose() / (v * v * v);
}

class BallModel final : public BodyModel {
 public:
  BallModel(int n, double rho) : n_(n), rho_(rho) {}
  int dim() const override { return n_; }
  BodyKind kind() const override { return BodyKind::ball; }
  double support(const Vec& u) const override { return rho_ * u.norm(); }
  Vec support_gradient(const Vec& u) const override { return rho_ * u / u.norm(); }
  Mat support_hessian(const Vec& u) const override {
    const double r = u.norm();
    return rho_ * (Mat::Identity(n_, n_) / r - u * u.transpose() / (r * r * r));
  }
  double gauge(const Vec& x) const override { return x.norm() / rho_; }
  Vec gauge_gradient(const Vec& x) const override { return x / (rho_ * x.norm()); }
  Mat gauge_hessian(const Vec& x) const override {
    const double r = x.norm();
    return (Mat::Identity(n_, n_) / r - x * x.transpose() / (r * r * r)) / rho_;
  }
  std::optional<double> volume() const override {
    return unit_ball_volume(n_) * std::pow(rho_, n_);
  }
  std::optional<double> polar_volume() const override {
    return unit_ball_volume(n_) * std::pow(rho_, -n_);
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "ball(radius=" << rho_ << ",n=" << n_ << ")";
    return os.str();
  }

 private:
  int n_;
  double rho_;
};

class EllipsoidModel final : public BodyModel {
 public:
  explicit EllipsoidModel(const Mat& A)
      : A_(A), M_(A * A.transpose()), Minv_(M_.inverse()), det_(std::abs(A.determinant())) {}
  int dim() const override { return static_cast<int>(A_.rows()); }
  BodyKind kind() const override { return BodyKind::ellipsoid; }
  double support(const Vec& u) const override { return std::sqrt(u.dot(M_ * u)); }
  Vec support_gradient(const Vec& u) const override { return M_ * u / support(u); }
  Mat support_hessian(const Vec& u) const override { return quadratic_norm_hessian(M_, u); }
  double gauge(const Vec& x) const override { return std::sqrt(x.dot(Minv_ * x)); }
  Vec gauge_gradient(const Vec& x) const override { return Minv_ * x / gauge(x); }
  Mat gauge_hessian(const Vec& x) const override { return quadratic_norm_hessian(Minv_, x); }
  std::optional<double> volume() const override { return unit_ball_volume(dim()) * det_; }
  std::optional<double> polar_volume() const override { return unit_ball_volume(dim()) / det_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "ellipsoid(n=" << dim() << ",det=" << det_ << ")";
    return os.str();
  }

 private:
  Mat A_;
  Mat M_;
  Mat Minv_;
  double det_;
};

// ‖x‖_p helpers with p > 1.
double lp_norm(const Vec& x, double p) {
  double s = 0.0;
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec lp_gradient(const Vec& x, double p) {
  const double v = lp_norm(x, p);
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    g(i) = std::copysign(std::pow(a / v, p - 1.0), x(i));
  }
  return g;
}

Mat lp_hessian(const Vec& x, double p) {
  const Eigen::Index n = x.size();
  const double v = lp_norm(x, p);
  const Vec w = lp_gradient(x, p);  // s_i (|x_i|/v)^{p-1}
  Mat H(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      H(i, j) = -(p - 1.0) * w(i) * w(j) / v;
    }
    const double a = std::abs(x(i));
    // (p-1) |x_i|^{p-2} v^{1-p}
    const double diag = a == 0.0 ? (p < 2.0 ? kInf : (p == 2.0 ? 1.0 / v : 0.0))
                                 : (p - 1.0) * std::pow(a / v, p - 2.0) / v;
    H(i, i) += diag;
  }
  return H;
}

std::vector<Vec> axis_directions(int n) {
  std::vector<Vec> dirs;
  if (n != 2) return dirs;
  for (int i = 0; i < 2; ++i) {
    for (double s : {1.0, -1.0}) {
      Vec e = Vec::Zero(2);
      e(i) = s;
      dirs.push_back(e);
    }
  }
  return dirs;
}

class LrBallModel final : public BodyModel {
 public:
  LrBallModel(int n, double r) : n_(n), r_(r), q_(r / (r - 1.0)) {}
  int dim() const override { return n_; }
  BodyKind kind() const override { return BodyKind::lr_ball; }
  double support(const Vec& u) const override { return lp_norm(u, q_); }
  Vec support_gradient(const Vec& u) const override { return lp_gradient(u, q_); }
  Mat support_hessian(const Vec& u) const override { return lp_hessian(u, q_); }
  double gauge(const Vec& x) const override { return lp_norm(x, r_); }
  Vec gauge_gradient(const Vec& x) const override { return lp_gradient(x, r_); }
  Mat gauge_hessian(const Vec& x) const override { return lp_hessian(x, r_); }
  std::optional<double> volume() const override { return volume_for(r_); }
  std::optional<double> polar_volume() const override { return volume_for(q_); }
  std::vector<Vec> support_singular() const override {
    return r_ == 2.0 ? std::vector<Vec>{} : axis_directions(n_);
  }
  std::vector<Vec> gauge_singular() const override { return support_singular(); }
  std::string describe() const override {
    std::ostringstream os;
    os << "lr_ball(r=" << r_ << ",n=" << n_ << ")";
    return os.str();
  }

 private:
  double volume_for(double p) const {
    return std::exp(n_ * std::log(2.0) + n_ * std::lgamma(1.0 + 1.0 / p) -
                    std::lgamma(1.0 + n_ / p));
  }
  int n_;
  double r_;
  double q_;
};

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

class PolytopeModel final : public BodyModel {
 public:
  explicit PolytopeModel(std::vector<Vec> hull) : v_(std::move(hull)) {
    const std::size_t m = v_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec& a = v_[i];
      const Vec& b = v_[(i + 1) % m];
      Vec nrm(2);
      nrm << b(1) - a(1), a(0) - b(0);
      nrm.normalize();
      const double off = nrm.dot(a);
      if (!(off > 1e-12)) throw InvalidBody("polytope: origin not interior");
      facets_.push_back(nrm / off);
    }
    area_ = 0.0;
    for (std::size_t i = 0; i < m; ++i) area_ += 0.5 * cross2(v_[i], v_[(i + 1) % m]);
    // polar polygon has the facet vectors as vertices, in the same cyclic order
    polar_area_ = 0.0;
    for (std::size_t i = 0; i < m; ++i) polar_area_ += 0.5 * cross2(facets_[i], facets_[(i + 1) % m]);
  }
  int dim() const override { return 2; }
  BodyKind kind() const override { return BodyKind::polytope; }
  Smoothness smoothness() const override { return Smoothness::polytope; }
  double support(const Vec& u) const override {
    double best = -kInf;
    for (const Vec& v : v_) best = std::max(best, v.dot(u));
    return best;
  }
  Vec support_gradient(const Vec& u) const override {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v_.size(); ++i) {
      if (v_[i].dot(u) > v_[best].dot(u)) best = i;
    }
    return v_[best];
  }
  Mat support_hessian(const Vec&) const override {
    throw UnsupportedSmoothness("polytope: support function has no Hessian");
  }
  double gauge(const Vec& x) const override {
    double best = -kInf;
    for (const Vec& a : facets_) best = std::max(best, a.dot(x));
    return std::max(best, 0.0);
  }
  Vec gauge_gradient(const Vec& x) const override {
    std::size_t best = 0;
    for (std::size_t i = 1; i < facets_.size(); ++i) {
      if (facets_[i].dot(x) > facets_[best].dot(x)) best = i;
    }
    return facets_[best];
  }
  Mat gauge_hessian(const Vec&) const override { return Mat::Zero(2, 2); }
  std::optional<double> volume() const override { return area_; }
  std::optional<double> polar_volume() const override { return polar_area_; }
  std::vector<Vec> support_singular() const override {
    // normals of the facets: h is piecewise linear between them
    std::vector<Vec> dirs;
    for (const Vec& a : facets_) dirs.push_back(a.normalized());
    return dirs;
  }
  std::vector<Vec> gauge_singular() const override {
    std::vector<Vec> dirs;
    for (const Vec& v : v_) dirs.push_back(v.normalized());
    return dirs;
  }
  std::vector<Vec> vertices() const override { return v_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "polytope(" << v_.size() << " vertices)";
    return os.str();
  }

 private:
  std::vector<Vec> v_;
  std::vector<Vec> facets_;
  double area_ = 0.0;
  double polar_area_ = 0.0;
};

class PolarModel final : public BodyModel {
 public:
  explicit PolarModel(std::shared_ptr<const BodyModel> inner) : in_(std::move(inner)) {}
  int dim() const override { return in_->dim(); }
  BodyKind kind() const override { return BodyKind::polar; }
  Smoothness smoothness() const override { return in_->smoothness(); }
  double support(const Vec& u) const override { return in_->gauge(u); }
  Vec support_gradient(const Vec& u) const override { return in_->gauge_gradient(u); }
  Mat support_hessian(const Vec& u) const override { return in_->gauge_hessian(u); }
  double gauge(const Vec& x) const override { return in_->support(x); }
  Vec gauge_gradient(const Vec& x) const override { return in_->support_gradient(x); }
  Mat gauge_hessian(const Vec& x) const override { return in_->support_hessian(x); }
  std::optional<double> volume() const override { return in_->polar_volume(); }
  std::optional<double> polar_volume() const override { return in_->volume(); }
  std::vector<Vec> support_singular() const override { return in_->gauge_singular(); }
  std::vector<Vec> gauge_singular() const override { return in_->support_singular(); }
  std::vector<Vec> vertices() const override {
    if (smoothness() != Smoothness::polytope) return {};
    // vertices of the polar polygon: the facet vectors of the inner polygon
    std::vector<Vec> out;
    const auto v = in_->vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec& a = v[i];
      const Vec& b = v[(i + 1) % v.size()];
      Vec nrm(2);
      nrm << b(1) - a(1), a(0) - b(0);
      out.push_back(nrm / nrm.dot(a));
    }
    return out;
  }
  std::string describe() const override { return "polar(" + in_->describe() + ")"; }

 private:
  std::shared_ptr<const BodyModel> in_;
};

class LinearImageModel final : public BodyModel {
 public:
  LinearImageModel(const Mat& T, std::shared_ptr<const BodyModel> inner)
      : T_(T), Tinv_(T.inverse()), in_(std::move(inner)), det_(std::abs(T.determinant())) {}
  int dim() const override { return in_->dim(); }
  BodyKind kind() const override { return BodyKind::linear_image; }
  Smoothness smoothness() const override { return in_->smoothness(); }
  double support(const Vec& u) const override { return in_->support(T_.transpose() * u); }
  Vec support_gradient(const Vec& u) const override {
    return T_ * in_->support_gradient(T_.transpose() * u);
  }
  Mat support_hessian(const Vec& u) const override {
    return T_ * in_->support_hessian(T_.transpose() * u) * T_.transpose();
  }
  double gauge(const Vec& x) const override { return in_->gauge(Tinv_ * x); }
  Vec gauge_gradient(const Vec& x) const override {
    return Tinv_.transpose() * in_->gauge_gradient(Tinv_ * x);
  }
  Mat gauge_hessian(const Vec& x) const override {
    return Tinv_.transpose() * in_->gauge_hessian(Tinv_ * x) * Tinv_;
  }
  std::optional<double> volume() const override {
    auto v = in_->volume();
    if (!v) return std::nullopt;
    return *v * det_;
  }
  std::optional<double> polar_volume() const override {
    auto v = in_->polar_volume();
    if (!v) return std::nullopt;
    return *v / det_;
  }
  std::vector<Vec> support_singular() const override {
    std::vector<Vec> out;
    for (const Vec& s : in_->support_singular()) out.push_back((Tinv_.transpose() * s).normalized());
    return out;
  }
  std::vector<Vec> gauge_singular() const override {
    std::vector<Vec> out;
    for (const Vec& s : in_->gauge_singular()) out.push_back((T_ * s).normalized());
    return out;
  }
  std::vector<Vec> vertices() const override {
    std::vector<Vec> out;
    for (const Vec& v : in_->vertices()) out.push_back(T_ * v);
    if (T_.determinant() < 0.0) std::reverse(out.begin(), out.end());
    return out;
  }
  std::string describe() const override { return "linear_image(" + in_->describe() + ")"; }

 private:
  Mat T_;
  Mat Tinv_;
  std::shared_ptr<const BodyModel> in_;
  double det_;
};

std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vec& o, const Vec& a, const Vec& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
  };
  for (const Vec& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace
}  // namespace detail

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::ball: return "ball";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::lr_ball: return "lr_ball";
    case BodyKind::polytope: return "polytope";
    case BodyKind::polar: return "polar";
    case BodyKind::linear_image: return "linear_image";
  }
  return "unknown";
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

ConvexBody::ConvexBody(std::shared_ptr<const detail::BodyModel> model) : model_(std::move(model)) {}

ConvexBody ConvexBody::ball(int dim, double radius) {
  if (dim < 2) throw InvalidArgument("ball: dimension must be at least 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidBody("ball: radius must be positive");
  return ConvexBody(std::make_shared<detail::BallModel>(dim, radius));
}

ConvexBody ConvexBody::ellipsoid(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() < 2) throw InvalidArgument("ellipsoid: need a square matrix, n >= 2");
  if (!A.allFinite() || std::abs(A.determinant()) < 1e-14) {
    throw InvalidBody("ellipsoid: matrix must be invertible");
  }
  return ConvexBody(std::make_shared<detail::EllipsoidModel>(A));
}

ConvexBody ConvexBody::lr_ball(int dim, double r) {
  if (dim < 2) throw InvalidArgument("lr_ball: dimension must be at least 2");
  if (!(r > 1.0) || !std::isfinite(r)) {
    throw InvalidBody("lr_ball: need 1 < r < inf (enter r = 1 or r = inf as polytopes)");
  }
  return ConvexBody(std::make_shared<detail::LrBallModel>(dim, r));
}

ConvexBody ConvexBody::polytope(const std::vector<Vec>& vertices) {
  if (vertices.empty() || vertices.front().size() != 2) {
    throw InvalidArgument("polytope: only two-dimensional vertex lists are supported");
  }
  for (const Vec& v : vertices) {
    if (v.size() != 2 || !v.allFinite()) throw InvalidBody("polytope: malformed vertex");
  }
  auto hull = detail::convex_hull_2d(vertices);
  if (hull.size() < 3) throw InvalidBody("polytope: vertices do not span the plane");
  // area centroid of the polygon
  double A = 0.0;
  Vec c = Vec::Zero(2);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& a = hull[i];
    const Vec& b = hull[(i + 1) % hull.size()];
    const double w = detail::cross2(a, b);
    A += 0.5 * w;
    c += w * (a + b) / 6.0;
  }
  if (!(A > 1e-14)) throw InvalidBody("polytope: zero area");
  c /= A;
  for (Vec& v : hull) v -= c;
  return ConvexBody(std::make_shared<detail::PolytopeModel>(std::move(hull)));
}

ConvexBody ConvexBody::polar() const {
  return ConvexBody(std::make_shared<detail::PolarModel>(model_));
}

ConvexBody ConvexBody::linear_image(const Mat& T) const {
  if (T.rows() != dim() || T.cols() != dim()) throw InvalidArgument("linear_image: dimension mismatch");
  if (!T.allFinite() || std::abs(T.determinant()) < 1e-14) {
    throw InvalidArgument("linear_image: singular matrix");
  }
  return ConvexBody(std::make_shared<detail::LinearImageModel>(T, model_));
}

int ConvexBody::dim() const { return model_->dim(); }
BodyKind ConvexBody::kind() const { return model_->kind(); }
Smoothness ConvexBody::smoothness() const { return model_->smoothness(); }
double ConvexBody::support(const Vec& u) const { return model_->support(u); }
Vec ConvexBody::support_gradient(const Vec& u) const { return model_->support_gradient(u); }
Mat ConvexBody::support_hessian(const Vec& u) const { return model_->support_hessian(u); }
double ConvexBody::gauge(const Vec& x) const { return model_->gauge(x); }
Vec ConvexBody::gauge_gradient(const Vec& x) const { return model_->gauge_gradient(x); }
Mat ConvexBody::gauge_hessian(const Vec& x) const { return model_->gauge_hessian(x); }
std::optional<double> ConvexBody::volume_closed_form() const { return model_->volume(); }
std::optional<double> ConvexBody::polar_volume_closed_form() const { return model_->polar_volume(); }
std::vector<Vec> ConvexBody::support_singular_directions() const { return model_->support_singular(); }
std::vector<Vec> ConvexBody::gauge_singular_directions() const { return model_->gauge_singular(); }
std::vector<Vec> ConvexBody::vertices() const { return model_->vertices(); }
std::string ConvexBody::describe() const { return model_->describe(); }

double support(const ConvexBody& K, const Direction& u) { return K.support(u); }
ConvexBody polar(const ConvexBody& K) { return K.polar(); }
ConvexBody linear_image(const Mat& T, const ConvexBody& K) { return K.linear_image(T); }

Vec boundary_point(const ConvexBody& K, const Direction& u) {
  if (!K.is_c2plus()) throw UnsupportedSmoothness("boundary_point: body is a polytope");
  return K.support_gradient(u);
}

double curvature_function(const ConvexBody& K, const Direction& u) {
  if (!K.is_c2plus()) throw UnsupportedSmoothness("curvature_function: body is a polytope");
  const Mat H = K.support_hessian(u);
  if (!H.allFinite()) return std::numeric_limits<double>::infinity();
  // H·u = 0, so replacing the zero eigenvalue along u by 1 leaves the
  // product of the principal radii.
  const Mat A = H + u * u.transpose();
  return A.determinant();
}

double curvature_function_fd(const ConvexBody& K, double theta) {
  if (K.dim() != 2) throw InvalidArgument("curvature_function_fd: n = 2 only");
  auto h = [&](double t) { return K.support(unit_vector_2d(t)); };
  auto second = [&](double step) {
    return (h(theta + step) - 2.0 * h(theta) + h(theta - step)) / (step * step);
  };
  // Richardson on the O(step²) central difference
  const double s = 2e-3;
  const double d1 = second(s);
  const double d2 = second(0.5 * s);
  const double d3 = second(0.25 * s);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  return h(theta) + (16.0 * r2 - r1) / 15.0;
}

double volume(const ConvexBody& K) {
  if (auto v = K.volume_closed_form()) return *v;
  return volume_by_quadrature(K);
}

double volume_by_quadrature(const ConvexBody& K) {
  if (!K.is_c2plus()) throw UnsupportedSmoothness("volume_by_quadrature: body is a polytope");
  const int n = K.dim();
  auto family = RuleFamily::for_dimension(n, K.support_singular_directions());
  auto res = integrate([&](const Vec& u) { return K.support(u) * curvature_function(K, u); }, family,
                       n >= 4 ? 1e-3 : 1e-12);
  if (!res.is_finite()) throw NonConvergence("volume_by_quadrature: integral did not converge");
  return res.value / n;
}

double polar_volume(const ConvexBody& K) {
  if (!K.is_c2plus()) {
    if (auto v = K.polar_volume_closed_form()) return *v;
  }
  const int n = K.dim();
  auto family = RuleFamily::for_dimension(n, K.support_singular_directions());
  auto res = integrate([&](const Vec& u) { return std::pow(K.support(u), -n); }, family,
                       n >= 4 ? 1e-3 : 1e-12);
  if (!res.is_finite()) throw NonConvergence("polar_volume: integral did not converge");
  return res.value / n;
}

RollingRadii rolling_radii(const ConvexBody& K) {
  if (!K.is_c2plus()) throw UnsupportedSmoothness("rolling_radii: body is a polytope");
  if (K.dim() != 2) throw InvalidArgument("rolling_radii: n = 2 only");
  double lo_prev = 0.0;
  double hi_prev = 0.0;
  for (int m = 256; m <= (1 << 20); m *= 2) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < m; ++j) {
      const double f = curvature_function(K, unit_vector_2d(2.0 * std::numbers::pi * j / m));
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    for (const Vec& s : K.support_singular_directions()) {
      const double f = curvature_function(K, s.normalized());
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    if (!std::isfinite(hi) || !(lo > 0.0)) {
      throw DegenerateBody("rolling_radii: radius of curvature is unbounded or vanishes");
    }
    if (m > 256 && std::abs(lo - lo_prev) <= 1e-6 * lo && std::abs(hi - hi_prev) <= 1e-6 * hi) {
      return {lo, hi};
    }
    lo_prev = lo;
    hi_prev = hi;
  }
  throw NonConvergence("rolling_radii: grid refinement did not stabilize");
}

}  // namespace lpaffine
