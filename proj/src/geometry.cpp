#include "geometry.hpp"

#include <algorithm>
#include <cmath>

#include "numerics.hpp"

namespace supersol {

namespace {
void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}
}  // namespace

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Domain Domain::full_space(int dim) {
  require(dim >= 2, ErrorCode::DomainError, "dimension must be >= 2");
  Domain d;
  d.shape_ = Shape::FullSpace;
  d.dim_ = dim;
  return d;
}

Domain Domain::ball(int dim, double R) {
  require(dim >= 2 && R > 0.0, ErrorCode::DomainError, "ball needs dim >= 2, R > 0");
  Domain d;
  d.shape_ = Shape::Ball;
  d.dim_ = dim;
  d.a_ = R;
  return d;
}

Domain Domain::exterior_of_ball(int dim, double R) {
  require(dim >= 2 && R > 0.0, ErrorCode::DomainError,
          "exterior domain needs dim >= 2, R > 0");
  Domain d;
  d.shape_ = Shape::ExteriorOfBall;
  d.dim_ = dim;
  d.a_ = R;
  return d;
}

Domain Domain::annulus(int dim, double R1, double R2) {
  require(dim >= 2 && 0.0 < R1 && R1 < R2, ErrorCode::DomainError,
          "annulus needs 0 < R1 < R2");
  Domain d;
  d.shape_ = Shape::Annulus;
  d.dim_ = dim;
  d.a_ = R1;
  d.b_ = R2;
  return d;
}

Domain Domain::cone2d(double theta0) {
  require(theta0 > 0.0 && theta0 < 2.0 * M_PI, ErrorCode::DomainError,
          "cone opening angle must lie in (0, 2*pi)");
  Domain d;
  d.shape_ = Shape::Cone2D;
  d.dim_ = 2;
  d.a_ = theta0;
  return d;
}

Domain Domain::custom(int dim, std::function<double(const Point&)> distance) {
  require(dim >= 2, ErrorCode::DomainError, "dimension must be >= 2");
  require(static_cast<bool>(distance), ErrorCode::DomainError,
          "custom domain needs a distance evaluator");
  Domain d;
  d.shape_ = Shape::CustomSampled;
  d.dim_ = dim;
  d.distance_ = std::move(distance);

  // 1-Lipschitz spot check on segments between interior probe points.
  std::vector<Point> inside;
  for (std::size_t i = 0; i < 256 && inside.size() < 12; ++i) {
    Point x = num::halton(i, dim);
    for (double& c : x) c = 10.0 * (c - 0.5);
    if (d.distance_(x) > 0.0) inside.push_back(x);
  }
  for (std::size_t a = 0; a + 1 < inside.size(); ++a) {
    const Point& x = inside[a];
    const Point& y = inside[a + 1];
    double seg = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double dxy = x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)];
      seg += dxy * dxy;
    }
    seg = std::sqrt(seg);
    const double dd = std::abs(d.distance_(x) - d.distance_(y));
    require(dd <= seg + 1e-9, ErrorCode::DomainError,
            "custom distance evaluator violates the 1-Lipschitz check");
  }
  return d;
}

bool Domain::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  const double r = norm(x);
  switch (shape_) {
    case Shape::FullSpace: return true;
    case Shape::Ball: return r < a_;
    case Shape::ExteriorOfBall: return r > a_;
    case Shape::Annulus: return r > a_ && r < b_;
    case Shape::Cone2D: {
      if (r <= 0.0) return false;
      double th = std::atan2(x[1], x[0]);
      if (th < 0.0) th += 2.0 * M_PI;
      return th > 0.0 && th < a_;
    }
    case Shape::CustomSampled: return distance_(x) > 0.0;
  }
  return false;
}

namespace {
// distance from polar point (r, phi) to the ray at angle 0, phi measured
// from the ray; the ray is a closed half-line from the origin
double dist_to_ray(double r, double phi) {
  phi = std::abs(phi);
  if (phi >= M_PI) phi = 2.0 * M_PI - phi;
  return phi <= 0.5 * M_PI ? r * std::sin(phi) : r;
}
}  // namespace

double Domain::distance_to_boundary(const Point& x) const {
  require(contains(x), ErrorCode::OutsideDomain,
          "point is not an interior point of the domain");
  const double r = norm(x);
  switch (shape_) {
    case Shape::FullSpace: return kInf;
    case Shape::Ball: return a_ - r;
    case Shape::ExteriorOfBall: return r - a_;
    case Shape::Annulus: return std::min(r - a_, b_ - r);
    case Shape::Cone2D: {
      double th = std::atan2(x[1], x[0]);
      if (th < 0.0) th += 2.0 * M_PI;
      return std::min(dist_to_ray(r, th), dist_to_ray(r, a_ - th));
    }
    case Shape::CustomSampled: return distance_(x);
  }
  return 0.0;
}

double Domain::sup_inradius() const {
  switch (shape_) {
    case Shape::FullSpace:
    case Shape::ExteriorOfBall:
    case Shape::Cone2D:
      return kInf;
    case Shape::Ball: return a_;
    case Shape::Annulus: return 0.5 * (b_ - a_);
    case Shape::CustomSampled: {
      // sampled maximum; a lower estimate of the true supremum
      double best = 0.0;
      for (std::size_t i = 0; i < 4096; ++i) {
        Point x = num::halton(i, dim_);
        for (double& c : x) c = 40.0 * (c - 0.5);
        if (distance_(x) > best) best = distance_(x);
      }
      return best;
    }
  }
  return 0.0;
}

bool Domain::excludes_origin() const {
  switch (shape_) {
    case Shape::ExteriorOfBall:
    case Shape::Annulus:
    case Shape::Cone2D:  // the apex is a boundary point
      return true;
    case Shape::FullSpace:
    case Shape::Ball:
      return false;
    case Shape::CustomSampled:
      return !(distance_ && distance_(Point(static_cast<std::size_t>(dim_), 0.0)) > 0.0);
  }
  return false;
}

std::string Domain::describe() const {
  switch (shape_) {
    case Shape::FullSpace: return "full_space";
    case Shape::Ball: return "ball(R=" + std::to_string(a_) + ")";
    case Shape::ExteriorOfBall: return "exterior_ball(R=" + std::to_string(a_) + ")";
    case Shape::Annulus:
      return "annulus(R1=" + std::to_string(a_) + ",R2=" + std::to_string(b_) + ")";
    case Shape::Cone2D: return "cone2d(theta0=" + std::to_string(a_) + ")";
    case Shape::CustomSampled: return "custom";
  }
  return "?";
}

Weight Weight::constant(double c) {
  require(c > 0.0, ErrorCode::DomainError, "constant weight must be positive");
  Weight w;
  w.kind_ = Kind::Constant;
  w.c_ = c;
  return w;
}

Weight Weight::radial_power(double beta) {
  Weight w;
  w.kind_ = Kind::RadialPower;
  w.beta_ = beta;
  return w;
}

double Weight::operator()(const Point& x) const {
  if (kind_ == Kind::Constant) return c_;
  return std::pow(norm(x), beta_);
}

double Weight::inf_over_ball(const Point& x, double r) const {
  if (kind_ == Kind::Constant) return c_;
  if (beta_ == 0.0) return 1.0;
  const double rx = norm(x);
  if (beta_ < 0.0) return std::pow(rx + r, beta_);  // infimum on the far side
  require(r < rx, ErrorCode::InvalidRadius,
          "ball reaches the origin where |x|^beta vanishes (beta > 0)");
  return std::pow(rx - r, beta_);  // infimum on the near side
}

bool Weight::valid_on(const Domain& dom) const {
  if (kind_ == Kind::Constant || beta_ == 0.0) return true;
  return dom.excludes_origin();
}

std::string Weight::describe() const {
  if (kind_ == Kind::Constant) return "constant(" + std::to_string(c_) + ")";
  return "radial_power(beta=" + std::to_string(beta_) + ")";
}

double weight_integral(const Weight& w, double p, const Point& x, double r) {
  require(p >= 0.0 && p < 1.0, ErrorCode::DomainError, "p must lie in [0,1)");
  require(r >= 0.0, ErrorCode::InvalidRadius, "radius must be non-negative");
  if (r == 0.0) return 0.0;
  const double e = 1.0 / (1.0 - p);
  if (w.kind() == Weight::Kind::Constant) {
    const double kap = (2.0 - p) / (1.0 - p);
    return std::pow(w.constant_value(), e) * (1.0 - p) / (2.0 - p) * std::pow(r, kap);
  }
  // (s rho_x(s))^e has a benign s^e factor at 0; the beta > 0 branch needs
  // the whole ball family to avoid the origin (checked inside inf_over_ball).
  if (w.exponent() > 0.0) w.inf_over_ball(x, r);  // radius validity
  auto integrand = [&](double s) { return std::pow(s * w.inf_over_ball(x, s), e); };
  return num::integrate(integrand, 0.0, r);
}

}  // namespace supersol
