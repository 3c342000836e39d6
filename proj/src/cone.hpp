#pragma once

// The planar cone construction: a positive solution of
//   -w'' - beta_q w = w^q on (0, theta0),  w(0) = w(theta0) = 0,
// found by shooting on w'(0), assembled into u(r,theta) = r^(2/(1-q)) w(theta),
// a non-constant positive solution of -Δu = u^q on the sector. This witnesses
// that the bounded-solution collar conclusion genuinely needs boundedness.

#include "oracle.hpp"

namespace supersol {

struct ConeSolution {
  double theta0 = 0.0;
  double q = 0.0;
  double beta_q = 0.0;        // (2/(1-q)) (N - 2 + 2/(1-q)) with N = 2
  double lambda1 = 0.0;       // (pi/theta0)^2, first Dirichlet eigenvalue
  double initial_slope = 0.0; // w'(0) found by the shooting bisection
  double boundary_defect = 0.0;  // |w(theta0)|
  double energy = 0.0;        // ∫ w'^2/2 - beta_q w^2/2 - w^(q+1)/(q+1)
  double max_value = 0.0;
  double min_interior = 0.0;  // min of w over the interior samples
  double symmetry_defect = 0.0;  // max |w(t) - w(theta0 - t)|
  int bisection_iterations = 0;
  RadialProfile w;            // radii hold theta in [0, theta0]

  double radial_exponent() const { return 2.0 / (1.0 - q); }
  /// Cubic Hermite interpolation of w on the integration grid.
  double value(double theta) const;
  double derivative(double theta) const;
  /// u(r, theta) = r^(2/(1-q)) w(theta)
  double u(double r, double theta) const;
};

/// Solves the two-point problem for N = 2; theta0 in (0, pi), q in (0,1).
/// Throws ExistenceConditionFailed when beta_q >= lambda1.
ConeSolution cone_example_solve(double theta0, double q);

struct PolarResidualLevel {
  double h_r = 0.0;
  double h_theta = 0.0;
  double max_relative = 0.0;
};

struct PolarResidualSummary {
  std::vector<PolarResidualLevel> levels;  // coarse to fine
  double max_relative = 0.0;               // finest level
  double order = 0.0;                      // observed h-refinement order
};

/// Relative finite-difference residual of -Δu - u^q for the assembled cone
/// solution on a polar grid r in [r_lo, r_hi], theta in the given interior
/// window, at `levels` successive refinements.
PolarResidualSummary cone_pde_residual(const ConeSolution& sol, double r_lo,
                                       double r_hi, double theta_lo,
                                       double theta_hi, int nr, int ntheta,
                                       int levels = 3);

}  // namespace supersol
