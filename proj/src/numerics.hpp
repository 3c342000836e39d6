#pragma once

// Shared numerical kernels: adaptive quadrature, monotone inversion,
// an adaptive Runge-Kutta integrator, low-discrepancy sampling and a
// small thread-pool-free parallel loop.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace supersol::num {

inline constexpr double kQuadAbsTol = 1e-10;
inline constexpr double kQuadRelTol = 1e-8;
inline constexpr double kBisectRelTol = 1e-12;
inline constexpr double kOdeLocalTol = 1e-10;

using Fn1 = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7-15) quadrature on a finite interval.
double integrate(const Fn1& f, double a, double b,
                 double abs_tol = kQuadAbsTol, double rel_tol = kQuadRelTol);

/// ∫_0^b f, where f(s) ~ s^(-sing) near 0 with sing in [0,1).
/// The substitution s = sigma^(1/(1-sing)) removes the singularity.
double integrate_singular_origin(const Fn1& f, double b, double sing,
                                 double abs_tol = kQuadAbsTol,
                                 double rel_tol = kQuadRelTol);

/// ∫_T^inf f, where f(s) ~ s^(-decay) at infinity with decay > 1.
double integrate_tail(const Fn1& f, double T, double decay,
                      double abs_tol = kQuadAbsTol,
                      double rel_tol = kQuadRelTol);

/// ∫_T^inf f by doubling the interval until the pieces stop mattering.
/// Used when no decay exponent is known; throws on non-convergence.
double integrate_tail_progressive(const Fn1& f, double T,
                                  double abs_tol = kQuadAbsTol,
                                  double rel_tol = kQuadRelTol);

/// Solve g(t) = y for monotone g on [lo, hi] by bisection.
/// `increasing` states the direction of g; tolerance is relative in t.
double invert_monotone(const Fn1& g, double y, double lo, double hi,
                       bool increasing, double rel_tol = kBisectRelTol);

/// Generic bisection for a sign change of f on [lo, hi].
double bisect(const Fn1& f, double lo, double hi, double rel_tol = kBisectRelTol);

// --- ODE integration (Dormand-Prince 5(4), adaptive step) ---

using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;

struct OdeOptions {
  double abs_tol = kOdeLocalTol;
  double rel_tol = kOdeLocalTol;
  double initial_step = 0.0;   // 0 -> auto
  double max_step = 0.0;       // 0 -> no cap
  std::size_t max_steps = 2000000;
  // Stop when this returns true; the last accepted state is kept.
  std::function<bool(double t, const std::vector<double>& y)> stop;
};

struct OdeResult {
  std::vector<double> t;
  std::vector<std::vector<double>> y;   // y[i] is the state at t[i]
  bool stopped_early = false;
  std::size_t steps = 0;
};

/// Integrate y' = f(t, y) from t0 to t1, landing exactly on each value in
/// `t_out` (which must be increasing and span [t0, t1]).
OdeResult integrate_ode(const OdeRhs& f, double t0, double t1,
                        const std::vector<double>& y0,
                        const std::vector<double>& t_out,
                        const OdeOptions& opts = {});

/// Classic fixed-step RK4 over n equal steps, reporting every state.
OdeResult integrate_ode_rk4(const OdeRhs& f, double t0, double t1,
                            const std::vector<double>& y0, std::size_t n);

// --- sampling and fitting ---

/// Halton sequence point (index i >= 0) in [0,1)^dim, bases 2,3,5,...
std::vector<double> halton(std::size_t i, int dim);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double max_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

// --- parallel loop ---

/// Worker cap: SUPERSOL_THREADS if set, else hardware concurrency.
int worker_thread_cap();

/// Run fn(begin, end) over chunks of [0, n); deterministic partitioning,
/// chunks must write disjoint output slots.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace supersol::num
