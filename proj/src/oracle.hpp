#pragma once

// Independent numerical verification: finite-difference residuals on
// grids and stencils, radial ODE integration, sampled infima, the
// pointwise inequality check on certified supersolutions, harmonic
// comparison interpolants and the superharmonic floor diagnostics.

#include <functional>
#include <iosfwd>
#include <optional>

#include "bounds.hpp"

namespace supersol {

using Evaluator = std::function<double(const Point&)>;

struct GridFunction {
  int dim = 0;
  Point lo;                         // lower corner of the box
  double h = 0.0;                   // uniform spacing
  std::vector<std::size_t> shape;   // nodes per axis
  std::vector<double> values;       // row-major

  static GridFunction sample(int dim, const Point& lo, const Point& hi, double h,
                             const Evaluator& fn);

  std::size_t size() const { return values.size(); }
  std::size_t flat_index(const std::vector<std::size_t>& idx) const;
  Point point_at(const std::vector<std::size_t>& idx) const;
  double& at(const std::vector<std::size_t>& idx);
  double at(const std::vector<std::size_t>& idx) const;
};

void write_grid_csv(std::ostream& os, const GridFunction& g);
GridFunction read_grid_csv(std::istream& is);
void write_radial_profile_csv(std::ostream& os, const RadialProfile& prof);
RadialProfile read_radial_profile_csv(std::istream& is);

struct ResidualSummary {
  double min = 0.0;
  double max = 0.0;
  double scale = 0.0;       // max of |lhs|, |rhs| over the nodes
  double order = 0.0;       // Richardson order estimate (2 expected)
  double tol = 0.0;         // C h^2 certification tolerance
  bool supersolution_certified = false;
  std::size_t nodes = 0;
};

struct ResidualField {
  GridFunction residual;   // interior nodes only (boundary ring zeroed)
  ResidualSummary summary;
};

/// Central-difference residual of -Δu - rho f(u)|∇u|^p on the interior of
/// the grid. Certification compares min residual against a C h^2 tolerance
/// estimated by comparing strides 1/2/4 (Richardson); throws GridTooCoarse
/// when the observed order strays from 2 by more than 0.3.
ResidualField fd_residual(const ProblemSpec& spec, const GridFunction& u);

struct StencilResidual {
  double lhs = 0.0;       // -Δ_h u
  double rhs = 0.0;       // rho f(u) |∇_h u|^p
  double residual = 0.0;  // lhs - rhs
  double relative = 0.0;  // |residual| / max(|lhs|, |rhs|)
};

/// Single-point residual from a 2N+1 stencil of an evaluator; `rhs` maps
/// (u value, gradient magnitude, point) to the right-hand side.
StencilResidual stencil_residual(
    const Evaluator& u, const Point& y, double h,
    const std::function<double(double, double, const Point&)>& rhs);

/// Radial test problem u'' + (N-1)/r u' = -rho(r) f(u)|u'|^p with the
/// N-fold symmetry regularisation at the origin.
RadialProfile radial_ivp(const ProblemSpec& spec, double u0, double du0,
                         double r_start, double r_end, std::size_t samples = 257);

/// Deterministic upper estimate of inf over the closed ball B_r(x):
/// low-discrepancy samples plus a compass-descent polish. n >= 1000.
double sampled_inf(const Evaluator& u, const Point& x, double r, int n);

struct Theorem1Check {
  double lhs = 0.0;        // ∫_{m}^{u(x)} ds/f^(1/(1-p))
  double rhs = 0.0;        // (2-p)/(1-p) alpha weight_integral
  bool holds = false;      // lhs >= rhs - 1e-6
  double inf_estimate = 0.0;
};

/// Checks the pointwise inequality on a (caller-certified) supersolution.
Theorem1Check verify_theorem1(const ProblemSpec& spec, const Evaluator& u,
                              const Point& x, double r, int inf_samples = 4096);

struct TransformCheck {
  bool applicable = true;
  bool holds = false;
  double min_margin = 0.0;  // min over nodes of (-Δw - rho|∇w|^p + tol)
  std::size_t nodes = 0;
};

/// Verifies that w = ∫_m^u f^(-1/(1-p)) is itself a supersolution of
/// -Δw >= rho |∇w|^p on the box, via finite differences. NotApplicable for
/// nonlinearities with a kink inside the sampled value range.
TransformCheck remark2_transform_check(const ProblemSpec& spec, const Evaluator& u,
                                       const Point& lo, const Point& hi, double h);

/// Harmonic interpolant matching I1 at |x| = R1 and I2 at |x| = R2:
/// the |x|^(2-N) profile for N >= 3, the log profile for N = 2.
double harmonic_comparison(int N, double R1, double R2, double I1, double I2,
                           double x_norm);

struct SuperharmonicFloor {
  double constant = 0.0;       // largest C with u >= C |x|^(2-N)  (N > 2)
  double liminf_proxy = 0.0;   // min of u on the largest sampled radius (N <= 2)
  double log_intercept = 0.0;  // least-squares fit I(R) ~ a + b log R
  double log_slope = 0.0;
  double max_fit_deviation = 0.0;
  std::vector<double> radii;
  std::vector<double> infima;  // sampled I(R)
};

/// Samples I(R) = inf_{|x|=R} u over the given radii and fits the floor
/// constants; diagnostic only.
SuperharmonicFloor serrin_zou_floor_check(const Evaluator& u, int N,
                                          const std::vector<double>& radii,
                                          int directions = 512);

/// Nodes where the discrete gradient vanishes (|∇_h u| <= 10 h): the
/// detected flat set of a grid sample.
std::vector<char> dead_core_mask(const GridFunction& u, double grad_tol = -1.0);

}  // namespace supersol
