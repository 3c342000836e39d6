#pragma once

// The explicit pointwise estimates: the integrable-case lower bound, the
// non-integrable infimum bound, the pure-power closed forms, the weighted
// exterior bound, the comparison profile w_r and the extremal ODE profile.

#include <memory>
#include <optional>
#include <vector>

#include "geometry.hpp"
#include "nonlinearity.hpp"

namespace supersol {

/// alpha_{N,p} = (1-p)/(2-p) * (N + p/(1-p))^(-1/(1-p))
double alpha(int N, double p);

/// kappa = (2-p)/(1-p), the radial exponent of the comparison profile.
double kappa(double p);

struct ProblemSpec {
  int dim = 3;
  double p = 0.0;
  Nonlinearity f = Nonlinearity::power(1.0);
  Weight weight = Weight::constant(1.0);
  Domain domain = Domain::full_space(3);

  void validate() const;  // throws DomainError on an inconsistent spec
};

/// Argument fed to F^{-1} / G^{-1}: alpha * (2-p)/(1-p) * weight_integral.
double bound_argument(const ProblemSpec& spec, const Point& x, double r);

struct PointBound {
  double value = 0.0;   // a_f when saturated
  bool saturated = false;
};

/// u(x) >= F^{-1}(bound_argument); `saturated` marks the regime where the
/// argument reaches ||F||_inf (dead core / non-existence signal).
PointBound lower_bound_point(const ProblemSpec& spec, const Point& x, double r);

/// inf over B_r(x) of u <= G^{-1}(bound_argument).
double inf_ball_upper_bound(const ProblemSpec& spec, const Point& x, double r);

struct PowerCaseBound {
  // 1: q < 1-p (pointwise power lower bound)
  // 2: q > 1-p (upper bound on the ball infimum)
  // 3: q = 1-p (multiplicative factor over m_x(r))
  int branch = 0;
  double coefficient = 0.0;
  double exponent = 0.0;
  double value = 0.0;   // bound evaluated at the given r (branches 1, 2)
  double factor = 1.0;  // exp(alpha r^kappa) (branch 3)
};

/// Closed forms for f(u) = u^q with rho = 1; branch picked by the sign of
/// q - (1-p) with a 1e-12 equality tolerance.
PowerCaseBound power_case_bound(int N, double p, double q, double r);

struct WeightedExteriorBound {
  double constant = 0.0;   // C_{p,N,gamma}
  double exponent = 0.0;   // (2 + beta - p)/(1 - p - q)
  double value_at(double x_norm) const;
};

/// Lower bound u(x) >= C |x|^((2+beta-p)/(1-p-q)) on |x| >= gamma for the
/// weight |x|^beta on the exterior of the unit ball, q/(1-p) < 1.
WeightedExteriorBound weighted_exterior_bound(int N, double p, double q,
                                              double beta, double gamma);

/// The radial comparison function
///   w_r(y) = alpha rho^(1/(1-p)) f(m)^(1/(1-p)) (r^kappa - |y-x0|^kappa)
/// with rho frozen at rho_{x0}(r); solves -Δw = rho f(m)|∇w|^p exactly.
class ComparisonProfile {
 public:
  ComparisonProfile(const ProblemSpec& spec, Point x0, double r, double m);

  double value(const Point& y) const;
  double gradient_magnitude(const Point& y) const;
  double laplacian(const Point& y) const;

  double amplitude() const { return amplitude_; }
  double frozen_rho() const { return rho_; }
  double f_of_m() const { return fm_; }
  double radial_exponent() const { return kappa_; }
  double radius() const { return r_; }
  const Point& center() const { return x0_; }

  /// Laplacian coefficient of |y|^kappa: kappa (kappa + N - 2).
  static double radial_power_laplacian_coeff(int N, double kap);

 private:
  Point x0_;
  double r_, kappa_, amplitude_, rho_, fm_;
  int dim_;
};

struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> derivatives;
};

struct ExtremalProfile {
  RadialProfile profile;                  // adaptive RK integration
  std::optional<double> zero_radius;      // where m reaches 0, if it does
  bool closed_form_available = false;
  double u0 = 0.0;

  /// Transform-route solution of the equality ODE (F, log, or G branch).
  double closed_form(double r) const;

  // branch data for closed_form
  int branch = 0;  // 1: F route, 2: G route, 3: logarithmic
  double alpha_scaled = 0.0;  // alpha * c^(1/(1-p)) for a constant weight c
  double kappa_val = 0.0;
  std::shared_ptr<const Transforms> transforms;
};

/// Solves m' = -kappa alpha c^(1/(1-p)) r^(kappa-1) f(m)^(1/(1-p)),
/// m(0) = u0, the equality case of the radial comparison ODE. Constant
/// weight only. The profile clamps at 0 and reports the crossing radius.
ExtremalProfile extremal_profile(const ProblemSpec& spec, double u0,
                                 double r_max, std::size_t samples = 257);

struct BoundCurve {
  enum class Kind { LowerBound, InfUpperBound };
  Kind kind = Kind::LowerBound;
  Point center;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<char> saturated;  // only meaningful for LowerBound
};

/// Evaluates the applicable bound over a radius grid; radii must be
/// increasing and stay below d_Omega(center).
BoundCurve bound_curve(const ProblemSpec& spec, const Point& center,
                       const std::vector<double>& radii);

}  // namespace supersol
