#pragma once

// Domain geometry (distance to the boundary, inradius supremum) and the
// weight rho with its ball infima and the radial weight integral
//   ∫_0^r (s rho_x(s))^(1/(1-p)) ds
// that appears on the right-hand side of every estimate.

#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "nonlinearity.hpp"  // kInf

namespace supersol {

using Point = std::vector<double>;

double norm(const Point& x);

class Domain {
 public:
  enum class Shape { FullSpace, Ball, ExteriorOfBall, Annulus, Cone2D, CustomSampled };

  static Domain full_space(int dim);
  static Domain ball(int dim, double R);               // centred at the origin
  static Domain exterior_of_ball(int dim, double R);   // {|x| > R}
  static Domain annulus(int dim, double R1, double R2);
  static Domain cone2d(double theta0);                 // sector 0 < theta < theta0
  // distance evaluator must return d(x) > 0 inside, <= 0 outside;
  // a sampled 1-Lipschitz check runs at construction.
  static Domain custom(int dim, std::function<double(const Point&)> distance);

  Shape shape() const { return shape_; }
  int dim() const { return dim_; }
  double R() const { return a_; }
  double R1() const { return a_; }
  double R2() const { return b_; }
  double theta0() const { return a_; }

  bool contains(const Point& x) const;
  /// d_Omega(x) = dist(x, boundary); +inf for the full space.
  /// Throws OutsideDomain when x is not an interior point.
  double distance_to_boundary(const Point& x) const;
  /// sup over the domain of d_Omega; +inf for unbounded-inradius shapes.
  /// For CustomSampled this is a sampled lower estimate.
  double sup_inradius() const;
  bool excludes_origin() const;

  std::string describe() const;

 private:
  Domain() = default;
  Shape shape_ = Shape::FullSpace;
  int dim_ = 2;
  double a_ = 0.0, b_ = 0.0;
  std::function<double(const Point&)> distance_;
};

class Weight {
 public:
  enum class Kind { Constant, RadialPower };

  static Weight constant(double c);
  static Weight radial_power(double beta);  // rho(x) = |x|^beta

  Kind kind() const { return kind_; }
  double constant_value() const { return c_; }
  double exponent() const { return beta_; }

  double operator()(const Point& x) const;
  /// rho_x(r) = inf over the ball B_r(x); exact closed form.
  /// For beta > 0 this needs r < |x| (InvalidRadius otherwise).
  double inf_over_ball(const Point& x, double r) const;
  /// True when the weight is positive on the given domain.
  bool valid_on(const Domain& dom) const;

  std::string describe() const;

 private:
  Weight() = default;
  Kind kind_ = Kind::Constant;
  double c_ = 1.0;
  double beta_ = 0.0;
};

/// ∫_0^r (s rho_x(s))^(1/(1-p)) ds. Closed form for constant weights,
/// adaptive quadrature for radial powers.
double weight_integral(const Weight& w, double p, const Point& x, double r);

// Spec-level aliases.
inline double dist_to_boundary(const Domain& d, const Point& x) {
  return d.distance_to_boundary(x);
}
inline double rho_inf(const Weight& w, const Point& x, double r) {
  return w.inf_over_ball(x, r);
}
inline double sup_inradius(const Domain& d) { return d.sup_inradius(); }

}  // namespace supersol
