#include "bounds.hpp"

#include <algorithm>
#include <cmath>

#include "numerics.hpp"

namespace supersol {

namespace {
void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}
constexpr double kBranchTol = 1e-12;  // |q - (1-p)| below this is the log branch
}  // namespace

double alpha(int N, double p) {
  require(N >= 2, ErrorCode::DomainError, "alpha needs N >= 2");
  require(p >= 0.0 && p < 1.0, ErrorCode::DomainError, "alpha needs p in [0,1)");
  const double one_m_p = 1.0 - p;
  return one_m_p / (2.0 - p) *
         std::pow(static_cast<double>(N) + p / one_m_p, -1.0 / one_m_p);
}

double kappa(double p) { return (2.0 - p) / (1.0 - p); }

void ProblemSpec::validate() const {
  require(dim >= 2, ErrorCode::DomainError, "spec needs dimension N >= 2");
  require(p >= 0.0 && p < 1.0, ErrorCode::DomainError, "spec needs p in [0,1)");
  require(domain.dim() == dim, ErrorCode::DomainError,
          "domain dimension does not match the spec dimension");
  require(weight.valid_on(domain), ErrorCode::DomainError,
          "radial-power weight needs a domain excluding the origin");
}

double bound_argument(const ProblemSpec& spec, const Point& x, double r) {
  const double d = spec.domain.distance_to_boundary(x);
  require(r >= 0.0 && r < d, ErrorCode::InvalidRadius,
          "radius must satisfy 0 <= r < d_Omega(x)");
  if (r == 0.0) return 0.0;
  return alpha(spec.dim, spec.p) * kappa(spec.p) *
         weight_integral(spec.weight, spec.p, x, r);
}

PointBound lower_bound_point(const ProblemSpec& spec, const Point& x, double r) {
  const Transforms tr(spec.f, spec.p);
  require(tr.integrability() == Integrability::IntegrableAtZero,
          ErrorCode::NotIntegrable,
          "lower bound needs f^(-1/(1-p)) integrable at 0");
  const double arg = bound_argument(spec, x, r);
  PointBound b;
  b.saturated = arg >= tr.F_infinity();
  b.value = b.saturated ? spec.f.upper_limit() : tr.F_inverse(arg);
  return b;
}

double inf_ball_upper_bound(const ProblemSpec& spec, const Point& x, double r) {
  const Transforms tr(spec.f, spec.p);
  require(tr.integrability() == Integrability::NonIntegrableAtZero,
          ErrorCode::NotApplicable,
          "infimum bound applies in the non-integrable case");
  require(tr.G_available(), ErrorCode::NotApplicable,
          "infimum bound unavailable: no positive primitive with G(0+)=inf");
  const double arg = bound_argument(spec, x, r);
  require(arg > 0.0, ErrorCode::InvalidRadius, "infimum bound needs r > 0");
  return tr.G_inverse(arg);
}

PowerCaseBound power_case_bound(int N, double p, double q, double r) {
  require(q >= 0.0, ErrorCode::DomainError, "power case needs q >= 0");
  const double a = alpha(N, p);
  const double kap = kappa(p);
  const double one_m_p = 1.0 - p;
  PowerCaseBound out;
  if (std::abs(q - one_m_p) < kBranchTol) {
    out.branch = 3;
    out.factor = std::exp(a * std::pow(r, kap));
    return out;
  }
  if (q < one_m_p) {
    out.branch = 1;
    out.coefficient = std::pow(a * (one_m_p - q) / one_m_p, one_m_p / (one_m_p - q));
    out.exponent = (2.0 - p) / (one_m_p - q);
    out.value = out.coefficient * std::pow(r, out.exponent);
    return out;
  }
  out.branch = 2;
  // G^{-1}(alpha r^kappa) for f(u) = u^q
  const double k = (p + q - 1.0) / one_m_p;
  out.coefficient = std::pow(one_m_p / (p + q - 1.0) / a, 1.0 / k);
  out.exponent = (p - 2.0) / (p + q - 1.0);
  out.value = out.coefficient * std::pow(r, out.exponent);
  return out;
}

double WeightedExteriorBound::value_at(double x_norm) const {
  return constant * std::pow(x_norm, exponent);
}

WeightedExteriorBound weighted_exterior_bound(int N, double p, double q,
                                              double beta, double gamma) {
  require(gamma > 1.0, ErrorCode::DomainError, "gamma must exceed 1");
  const double one_m_p = 1.0 - p;
  require(q / one_m_p < 1.0, ErrorCode::NotApplicable,
          "weighted exterior bound covers the q/(1-p) < 1 branch");
  const double e = 1.0 / one_m_p;
  // kernel from rho_x(s): (1+t)^beta on the far side for beta <= 0,
  // (1-t)^beta on the near side for beta > 0
  auto kernel = [&](double t) {
    const double base = beta <= 0.0 ? 1.0 + t : 1.0 - t;
    return std::pow(t * std::pow(base, beta), e);
  };
  const double upper = (gamma - 1.0) / gamma;
  const double integral = num::integrate(kernel, 0.0, upper);
  WeightedExteriorBound out;
  const double a = alpha(N, p);
  out.constant = std::pow(a * (one_m_p - q) / one_m_p, one_m_p / (one_m_p - q)) *
                 std::pow(integral, one_m_p / (one_m_p - q));
  out.exponent = (2.0 + beta - p) / (one_m_p - q);
  return out;
}

ComparisonProfile::ComparisonProfile(const ProblemSpec& spec, Point x0, double r,
                                     double m)
    : x0_(std::move(x0)), r_(r), dim_(spec.dim) {
  require(r > 0.0, ErrorCode::InvalidRadius, "comparison profile needs r > 0");
  require(m >= 0.0 && m < spec.f.upper_limit(), ErrorCode::DomainError,
          "m must lie in [0, a_f)");
  kappa_ = kappa(spec.p);
  rho_ = spec.weight.inf_over_ball(x0_, r);
  fm_ = spec.f(m);
  const double e = 1.0 / (1.0 - spec.p);
  amplitude_ = alpha(spec.dim, spec.p) * std::pow(rho_, e) * std::pow(fm_, e);
}

double ComparisonProfile::value(const Point& y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - x0_[i];
    s += d * d;
  }
  const double dist = std::sqrt(s);
  return amplitude_ * (std::pow(r_, kappa_) - std::pow(dist, kappa_));
}

double ComparisonProfile::gradient_magnitude(const Point& y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - x0_[i];
    s += d * d;
  }
  const double dist = std::sqrt(s);
  return amplitude_ * kappa_ * std::pow(dist, kappa_ - 1.0);
}

double ComparisonProfile::laplacian(const Point& y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - x0_[i];
    s += d * d;
  }
  const double dist = std::sqrt(s);
  const double coeff = radial_power_laplacian_coeff(dim_, kappa_);
  return -amplitude_ * coeff * std::pow(dist, kappa_ - 2.0);
}

double ComparisonProfile::radial_power_laplacian_coeff(int N, double kap) {
  return kap * (kap + static_cast<double>(N) - 2.0);
}

double ExtremalProfile::closed_form(double r) const {
  require(closed_form_available, ErrorCode::NotApplicable,
          "no transform route is available for this nonlinearity");
  const double drive = alpha_scaled * std::pow(r, kappa_val);
  switch (branch) {
    case 1: {
      const double y = transforms->F(u0) - drive;
      return y <= 0.0 ? 0.0 : transforms->F_inverse(y);
    }
    case 2:
      return transforms->G_inverse(transforms->G(u0) + drive);
    case 3:
      return u0 * std::exp(-drive);
  }
  return 0.0;
}

ExtremalProfile extremal_profile(const ProblemSpec& spec, double u0, double r_max,
                                 std::size_t samples) {
  require(spec.weight.kind() == Weight::Kind::Constant, ErrorCode::NotApplicable,
          "the extremal ODE is defined for constant weights");
  require(u0 > 0.0 && u0 < spec.f.upper_limit(), ErrorCode::DomainError,
          "u0 must lie in (0, a_f)");
  require(r_max > 0.0 && samples >= 2, ErrorCode::DomainError,
          "need r_max > 0 and at least two samples");

  ExtremalProfile out;
  out.u0 = u0;
  out.kappa_val = kappa(spec.p);
  const double e = 1.0 / (1.0 - spec.p);
  out.alpha_scaled =
      alpha(spec.dim, spec.p) * std::pow(spec.weight.constant_value(), e);
  auto tr = std::make_shared<Transforms>(spec.f, spec.p);
  out.transforms = tr;
  const bool integrable = tr->integrability() == Integrability::IntegrableAtZero;
  if (integrable) {
    out.branch = 1;
    out.closed_form_available = true;
  } else if (tr->G_available()) {
    out.branch = 2;
    out.closed_form_available = true;
  } else if (spec.f.family() == Nonlinearity::Family::PowerQ &&
             std::abs(spec.f.q() - (1.0 - spec.p)) < kBranchTol) {
    out.branch = 3;
    out.closed_form_available = true;
  }

  const double kap = out.kappa_val;
  const double a_scaled = out.alpha_scaled;
  const double floor = 1e-18 * std::max(1.0, u0);
  auto slope = [&](double r, double m) {
    const double mm = std::min(std::max(m, 0.0), spec.f.upper_limit() * (1.0 - 1e-15));
    if (mm <= 0.0) return 0.0;
    return -kap * a_scaled * std::pow(r, kap - 1.0) * std::pow(spec.f(mm), e);
  };
  num::OdeRhs rhs = [&](double r, const std::vector<double>& y,
                        std::vector<double>& dy) { dy[0] = slope(r, y[0]); };

  num::OdeOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-12;
  if (integrable)
    opts.stop = [&](double, const std::vector<double>& y) { return y[0] <= floor; };

  const std::vector<double> grid = num::linspace(0.0, r_max, samples);
  num::OdeResult res = num::integrate_ode(rhs, 0.0, r_max, {u0}, grid, opts);

  out.profile.radii = grid;
  out.profile.values.assign(samples, 0.0);
  out.profile.derivatives.assign(samples, 0.0);
  for (std::size_t i = 0; i < res.t.size() && i < samples; ++i) {
    const double m = std::max(res.y[i][0], 0.0);
    out.profile.values[i] = m;
    out.profile.derivatives[i] = slope(grid[i], m);
  }
  // outputs past an early stop stay clamped at zero

  if (integrable && res.stopped_early && !res.t.empty()) {
    // refine the radius where m reaches the floor: bisect, re-integrating
    // from the last emitted state above the floor
    double r_lo = 0.0, m_lo = u0;
    for (std::size_t i = 0; i < res.t.size(); ++i) {
      if (res.y[i][0] > floor) {
        r_lo = res.t[i];
        m_lo = res.y[i][0];
      }
    }
    double r_hi = r_max;
    for (std::size_t i = 0; i < res.t.size(); ++i) {
      if (res.y[i][0] <= floor) {
        r_hi = res.t[i];
        break;
      }
    }
    auto m_at = [&](double r_target) {
      if (r_target <= r_lo) return m_lo;
      num::OdeResult seg =
          num::integrate_ode_rk4(rhs, r_lo, r_target, {m_lo}, 256);
      return seg.y.back()[0];
    };
    double lo = r_lo, hi = std::max(r_hi, r_lo * (1.0 + 1e-12));
    for (int it = 0; it < 90 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (m_at(mid) > floor)
        lo = mid;
      else
        hi = mid;
    }
    out.zero_radius = 0.5 * (lo + hi);
  }
  return out;
}

BoundCurve bound_curve(const ProblemSpec& spec, const Point& center,
                       const std::vector<double>& radii) {
  require(!radii.empty(), ErrorCode::DomainError, "empty radius grid");
  const double d = spec.domain.distance_to_boundary(center);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && radii[i] < d, ErrorCode::InvalidRadius,
            "each radius must satisfy 0 < r < d_Omega(center)");
    if (i > 0)
      require(radii[i] > radii[i - 1], ErrorCode::DomainError,
              "radius grid must be strictly increasing");
  }
  const Transforms tr(spec.f, spec.p);
  BoundCurve curve;
  curve.center = center;
  curve.radii = radii;
  curve.values.assign(radii.size(), 0.0);
  curve.saturated.assign(radii.size(), 0);
  const bool lower = tr.integrability() == Integrability::IntegrableAtZero;
  if (!lower)
    require(tr.G_available(), ErrorCode::NotApplicable,
            "no bound curve: integrand not integrable and G unavailable");
  curve.kind = lower ? BoundCurve::Kind::LowerBound : BoundCurve::Kind::InfUpperBound;
  const double a = alpha(spec.dim, spec.p);
  const double kap = kappa(spec.p);
  num::parallel_for(radii.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double arg =
          a * kap * weight_integral(spec.weight, spec.p, center, radii[i]);
      if (lower) {
        if (arg >= tr.F_infinity()) {
          curve.values[i] = spec.f.upper_limit();
          curve.saturated[i] = 1;
        } else {
          curve.values[i] = tr.F_inverse(arg);
        }
      } else {
        curve.values[i] = tr.G_inverse(arg);
      }
    }
  });
  return curve;
}

}  // namespace supersol
