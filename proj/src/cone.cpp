#include "cone.hpp"

#include <algorithm>
#include <cmath>

#include "numerics.hpp"

namespace supersol {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// w'' = -(beta w + max(w,0)^q); negative w continues linearly so the
// shooting endpoint value is well defined past a crossing.
num::OdeRhs cone_rhs(double beta, double q) {
  return [beta, q](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[1];
    const double wpos = std::max(y[0], 0.0);
    dy[1] = -(beta * y[0] + std::pow(wpos, q));
  };
}

double end_value(double beta, double q, double theta0, double slope,
                 std::size_t steps) {
  num::OdeResult res =
      num::integrate_ode_rk4(cone_rhs(beta, q), 0.0, theta0, {0.0, slope}, steps);
  return res.y.back()[0];
}

}  // namespace

double ConeSolution::value(double theta) const {
  const auto& th = w.radii;
  if (theta <= th.front()) return w.values.front();
  if (theta >= th.back()) return w.values.back();
  const double h = th[1] - th[0];
  std::size_t i = static_cast<std::size_t>((theta - th.front()) / h);
  i = std::min(i, th.size() - 2);
  const double t = (theta - th[i]) / h;
  const double y0 = w.values[i], y1 = w.values[i + 1];
  const double d0 = w.derivatives[i] * h, d1 = w.derivatives[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
}

double ConeSolution::derivative(double theta) const {
  const auto& th = w.radii;
  if (theta <= th.front()) return w.derivatives.front();
  if (theta >= th.back()) return w.derivatives.back();
  const double h = th[1] - th[0];
  std::size_t i = static_cast<std::size_t>((theta - th.front()) / h);
  i = std::min(i, th.size() - 2);
  const double t = (theta - th[i]) / h;
  const double y0 = w.values[i], y1 = w.values[i + 1];
  const double d0 = w.derivatives[i] * h, d1 = w.derivatives[i + 1] * h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * d0 +
          (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * d1) /
         h;
}

double ConeSolution::u(double r, double theta) const {
  return std::pow(r, radial_exponent()) * value(theta);
}

ConeSolution cone_example_solve(double theta0, double q) {
  require(theta0 > 0.0 && theta0 < M_PI, ErrorCode::DomainError,
          "theta0 must lie in (0, pi) for the planar sector");
  require(q > 0.0 && q < 1.0, ErrorCode::DomainError, "q must lie in (0,1)");
  ConeSolution sol;
  sol.theta0 = theta0;
  sol.q = q;
  const double m = 2.0 / (1.0 - q);
  sol.beta_q = m * (0.0 + m);  // N = 2: (2/(1-q)) (N-2 + 2/(1-q))
  sol.lambda1 = std::pow(M_PI / theta0, 2.0);
  require(sol.beta_q < sol.lambda1, ErrorCode::ExistenceConditionFailed,
          "beta_q >= lambda1(S): the minimisation argument gives no solution");

  const std::size_t shoot_steps = 4096;
  auto endv = [&](double s) {
    return end_value(sol.beta_q, q, theta0, s, shoot_steps);
  };
  // bracket the slope: small slopes cross zero before theta0 (the sublinear
  // term dominates small amplitudes), large slopes land positive
  double s_lo = 1.0, s_hi = 1.0;
  while (endv(s_lo) > 0.0 && s_lo > 1e-280) s_lo *= 0.25;
  require(s_lo > 1e-280, ErrorCode::NumericFailure,
          "shooting: no early-crossing slope found");
  while (endv(s_hi) <= 0.0 && s_hi < 1e280) s_hi *= 2.0;
  require(s_hi < 1e280, ErrorCode::NumericFailure,
          "shooting: no positive-endpoint slope found");
  double lo = s_lo, hi = s_hi;
  int iters = 0;
  while (hi - lo > 1e-14 * hi && iters < 200) {
    const double mid = 0.5 * (lo + hi);
    if (endv(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
    ++iters;
  }
  sol.initial_slope = hi;
  sol.bisection_iterations = iters;

  const std::size_t profile_steps = 32768;
  num::OdeResult res = num::integrate_ode_rk4(cone_rhs(sol.beta_q, q), 0.0, theta0,
                                              {0.0, sol.initial_slope},
                                              profile_steps);
  sol.w.radii = res.t;
  sol.w.values.resize(res.y.size());
  sol.w.derivatives.resize(res.y.size());
  for (std::size_t i = 0; i < res.y.size(); ++i) {
    sol.w.values[i] = res.y[i][0];
    sol.w.derivatives[i] = res.y[i][1];
  }
  sol.boundary_defect = std::abs(sol.w.values.back());
  sol.max_value = *std::max_element(sol.w.values.begin(), sol.w.values.end());

  double min_int = kInf, sym = 0.0;
  for (std::size_t i = 1; i + 1 < sol.w.values.size(); ++i) {
    min_int = std::min(min_int, sol.w.values[i]);
    sym = std::max(sym, std::abs(sol.w.values[i] -
                                 sol.w.values[sol.w.values.size() - 1 - i]));
  }
  sol.min_interior = min_int;
  sol.symmetry_defect = sym;

  // energy by composite Simpson on the uniform profile grid
  const double h = theta0 / static_cast<double>(profile_steps);
  auto dens = [&](std::size_t i) {
    const double w = std::max(sol.w.values[i], 0.0);
    const double wd = sol.w.derivatives[i];
    return 0.5 * wd * wd - 0.5 * sol.beta_q * w * w -
           std::pow(w, q + 1.0) / (q + 1.0);
  };
  double e = dens(0) + dens(profile_steps);
  for (std::size_t i = 1; i < profile_steps; i += 2) e += 4.0 * dens(i);
  for (std::size_t i = 2; i < profile_steps; i += 2) e += 2.0 * dens(i);
  sol.energy = e * h / 3.0;
  return sol;
}

PolarResidualSummary cone_pde_residual(const ConeSolution& sol, double r_lo,
                                       double r_hi, double theta_lo,
                                       double theta_hi, int nr, int ntheta,
                                       int levels) {
  require(r_lo > 0.0 && r_hi > r_lo && theta_lo >= 0.0 && theta_hi > theta_lo &&
              theta_hi <= sol.theta0 && nr >= 4 && ntheta >= 4 && levels >= 1,
          ErrorCode::DomainError, "bad polar residual window");
  PolarResidualSummary out;
  for (int lev = 0; lev < levels; ++lev) {
    const int mr = nr << lev;
    const int mt = ntheta << lev;
    const double hr = (r_hi - r_lo) / mr;
    const double ht = (theta_hi - theta_lo) / mt;
    double worst = 0.0;
    for (int i = 1; i < mr; ++i) {
      const double r = r_lo + hr * i;
      for (int j = 1; j < mt; ++j) {
        const double th = theta_lo + ht * j;
        // Δu = u_rr + u_r / r + u_tt / r^2 by central differences
        const double uc = sol.u(r, th);
        const double urp = sol.u(r + hr, th), urm = sol.u(r - hr, th);
        const double utp = sol.u(r, th + ht), utm = sol.u(r, th - ht);
        const double u_rr = (urp - 2.0 * uc + urm) / (hr * hr);
        const double u_r = (urp - urm) / (2.0 * hr);
        const double u_tt = (utp - 2.0 * uc + utm) / (ht * ht);
        const double lap = u_rr + u_r / r + u_tt / (r * r);
        const double lhs = -lap;
        const double rhs = std::pow(std::max(uc, 0.0), sol.q);
        const double denom = std::max(std::abs(lhs), std::abs(rhs));
        if (denom <= 0.0) continue;
        worst = std::max(worst, std::abs(lhs - rhs) / denom);
      }
    }
    out.levels.push_back({hr, ht, worst});
  }
  out.max_relative = out.levels.back().max_relative;
  if (out.levels.size() >= 2) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < out.levels.size(); ++i) {
      xs.push_back(std::log(out.levels[i].h_r));
      ys.push_back(std::log(std::max(out.levels[i].max_relative, 1e-300)));
    }
    out.order = num::fit_line(xs, ys).slope;
  }
  return out;
}

}  // namespace supersol
