#include "nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "numerics.hpp"

namespace supersol {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// Tail ∫_T^inf g with unknown decay: doubling windows, declaring +inf when
// the pieces stop shrinking.
double tail_or_infinity(const std::function<double(double)>& g, double T) {
  double total = 0.0, a = T, width = std::max(T, 1.0), prev = kInf;
  int growing = 0;
  for (int k = 0; k < 64; ++k) {
    const double piece = num::integrate(g, a, a + width);
    total += piece;
    if (k > 2 && piece < std::max(num::kQuadAbsTol, 0.25 * num::kQuadRelTol * total))
      return total;
    growing = piece >= prev * 0.999 ? growing + 1 : 0;
    if (growing >= 3) return kInf;
    prev = piece;
    a += width;
    width *= 2.0;
  }
  return kInf;
}

}  // namespace

Nonlinearity Nonlinearity::power(double q) {
  require(q > 0.0, ErrorCode::DomainError, "power family needs q > 0");
  Nonlinearity f;
  f.family_ = Family::PowerQ;
  f.q_ = q;
  f.zero_exponent_ = q;
  f.infinity_exponent_ = q;
  return f;
}

Nonlinearity Nonlinearity::sum_powers(double q, double r) {
  require(q > 0.0 && r > 0.0, ErrorCode::DomainError, "sum_powers needs q, r > 0");
  Nonlinearity f;
  f.family_ = Family::SumPowers;
  f.q_ = std::min(q, r);
  f.r_ = std::max(q, r);
  f.zero_exponent_ = f.q_;
  f.infinity_exponent_ = f.r_;
  return f;
}

Nonlinearity Nonlinearity::max_powers(double q, double r) {
  require(q > 0.0 && r > 0.0, ErrorCode::DomainError, "max_powers needs q, r > 0");
  Nonlinearity f;
  f.family_ = Family::MaxPowers;
  f.q_ = std::min(q, r);
  f.r_ = std::max(q, r);
  f.zero_exponent_ = f.q_;
  f.infinity_exponent_ = f.r_;
  return f;
}

Nonlinearity Nonlinearity::singular_one_minus_u(double q) {
  require(q > 1.0, ErrorCode::DomainError, "singular family needs q > 1");
  Nonlinearity f;
  f.family_ = Family::SingularOneMinusU;
  f.q_ = q;
  f.upper_limit_ = 1.0;
  f.zero_exponent_ = 0.0;
  f.infinity_exponent_ = std::numeric_limits<double>::quiet_NaN();
  return f;
}

Nonlinearity Nonlinearity::custom(std::function<double(double)> evaluator,
                                  double zero_exponent, double upper_limit) {
  require(static_cast<bool>(evaluator), ErrorCode::DomainError,
          "custom nonlinearity needs an evaluator");
  require(upper_limit > 0.0, ErrorCode::DomainError, "upper_limit must be positive");
  require(zero_exponent >= 0.0, ErrorCode::DomainError,
          "a non-decreasing f finite at 0 has zero_exponent >= 0");
  Nonlinearity f;
  f.family_ = Family::Custom;
  f.upper_limit_ = upper_limit;
  f.zero_exponent_ = zero_exponent;
  f.infinity_exponent_ = std::numeric_limits<double>::quiet_NaN();
  f.evaluator_ = std::move(evaluator);

  // Condition (C) spot check: positive for s > 0 and non-decreasing.
  const double hi = std::isfinite(upper_limit) ? upper_limit * (1.0 - 1e-6) : 1e6;
  const auto grid = num::logspace(1e-12, hi, 160);
  double prev = 0.0;
  for (double s : grid) {
    const double v = f.evaluator_(s);
    require(std::isfinite(v) && v > 0.0, ErrorCode::DomainError,
            "custom evaluator must be positive and finite for s > 0");
    require(v >= prev * (1.0 - 1e-10), ErrorCode::DomainError,
            "custom evaluator is not non-decreasing on the sample grid");
    prev = v;
  }
  // Declared small-s behaviour f(s) = Theta(s^gamma) within a factor of 2.
  const auto zgrid = num::logspace(1e-12, 1e-2, 40);
  std::vector<double> ratios;
  ratios.reserve(zgrid.size());
  for (double s : zgrid) ratios.push_back(f.evaluator_(s) / std::pow(s, zero_exponent));
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double c = sorted[sorted.size() / 2];
  for (double rat : ratios)
    require(rat >= 0.5 * c * (1.0 - 1e-9) && rat <= 2.0 * c * (1.0 + 1e-9),
            ErrorCode::DomainError,
            "custom evaluator does not match the declared zero_exponent "
            "within a factor of 2 near 0");
  return f;
}

double Nonlinearity::operator()(double s) const {
  if (!(s >= 0.0) || s >= upper_limit_)
    throw Error(ErrorCode::DomainError, "f evaluated outside its domain [0, a_f)");
  switch (family_) {
    case Family::PowerQ:
      return std::pow(s, q_);
    case Family::SumPowers:
      return std::pow(s, q_) + std::pow(s, r_);
    case Family::MaxPowers:
      return std::max(std::pow(s, q_), std::pow(s, r_));
    case Family::SingularOneMinusU:
      return std::pow(1.0 - s, -q_);
    case Family::Custom:
      return evaluator_(s);
  }
  return 0.0;
}

std::string Nonlinearity::describe() const {
  switch (family_) {
    case Family::PowerQ: return "power(q=" + std::to_string(q_) + ")";
    case Family::SumPowers:
      return "sum_powers(q=" + std::to_string(q_) + ",r=" + std::to_string(r_) + ")";
    case Family::MaxPowers:
      return "max_powers(q=" + std::to_string(q_) + ",r=" + std::to_string(r_) + ")";
    case Family::SingularOneMinusU:
      return "singular(q=" + std::to_string(q_) + ")";
    case Family::Custom: return "custom";
  }
  return "?";
}

Integrability classify_integrability(const Nonlinearity& f, double p) {
  require(p >= 0.0 && p < 1.0, ErrorCode::DomainError, "p must lie in [0,1)");
  // f ~ s^gamma at 0, so f^(-1/(1-p)) ~ s^(-gamma/(1-p)).
  return f.zero_exponent() < (1.0 - p) ? Integrability::IntegrableAtZero
                                       : Integrability::NonIntegrableAtZero;
}

Transforms::Transforms(const Nonlinearity& f, double p) : f_(f), p_(p) {
  require(p >= 0.0 && p < 1.0, ErrorCode::DomainError, "p must lie in [0,1)");
  e_ = 1.0 / (1.0 - p);
  integ_ = classify_integrability(f, p);

  const double one_m_p = 1.0 - p_;
  auto integrand = [this](double s) { return std::pow(f_(s), -e_); };

  if (integ_ == Integrability::IntegrableAtZero) {
    switch (f_.family()) {
      case Nonlinearity::Family::PowerQ:
        f_infinity_ = kInf;  // q < 1-p makes the far tail diverge
        break;
      case Nonlinearity::Family::MaxPowers:
      case Nonlinearity::Family::SumPowers: {
        const double qhi = f_.r();
        if (qhi > one_m_p)
          f_infinity_ = F(1.0) + tail_from(1.0);
        else
          f_infinity_ = kInf;
        break;
      }
      case Nonlinearity::Family::SingularOneMinusU:
        f_infinity_ = one_m_p / (1.0 + f_.q() - p_);
        break;
      case Nonlinearity::Family::Custom: {
        if (std::isfinite(f_.upper_limit())) {
          f_infinity_ = F_quadrature(f_.upper_limit());
        } else {
          const double head =
              num::integrate_singular_origin(integrand, 1.0, f_.zero_exponent() * e_);
          f_infinity_ = head + tail_or_infinity(integrand, 1.0);
        }
        break;
      }
    }
  } else {
    // G needs a convergent tail ∫_t^{a_f} f^(-e).
    switch (f_.family()) {
      case Nonlinearity::Family::PowerQ:
        g_available_ = f_.q() > one_m_p;
        break;
      case Nonlinearity::Family::MaxPowers:
      case Nonlinearity::Family::SumPowers:
        g_available_ = f_.r() > one_m_p;
        break;
      case Nonlinearity::Family::SingularOneMinusU:
        g_available_ = false;  // never reached: always integrable at 0
        break;
      case Nonlinearity::Family::Custom:
        if (std::isfinite(f_.upper_limit())) {
          g_available_ = true;  // bounded interval, decreasing integrand
        } else {
          g_available_ = std::isfinite(tail_or_infinity(integrand, 1.0));
        }
        break;
    }
  }
}

double Transforms::tail_from(double t) const {
  auto integrand = [this](double s) { return std::pow(f_(s), -e_); };
  const double af = f_.upper_limit();
  if (std::isfinite(af)) return num::integrate(integrand, t, af);
  const double decay = f_.infinity_exponent() * e_;
  if (std::isfinite(decay) && decay > 1.0)
    return num::integrate_tail(integrand, t, decay);
  return tail_or_infinity(integrand, t);
}

double Transforms::F_quadrature(double t) const {
  auto integrand = [this](double s) { return std::pow(f_(s), -e_); };
  const double sing = f_.zero_exponent() * e_;
  if (!std::isfinite(t)) return F_infinity();
  if (t <= 1.0) return num::integrate_singular_origin(integrand, t, sing);
  // split so the origin substitution is not stretched over a long interval
  return num::integrate_singular_origin(integrand, 1.0, sing) +
         num::integrate(integrand, 1.0, t);
}

double Transforms::F(double t) const {
  require(integ_ == Integrability::IntegrableAtZero, ErrorCode::NotIntegrable,
          "F is undefined: f^(-1/(1-p)) is not integrable at 0");
  require(t >= 0.0 && (t <= f_.upper_limit()), ErrorCode::DomainError,
          "F argument outside [0, a_f]");
  if (t == 0.0) return 0.0;
  if (t >= f_.upper_limit()) return f_infinity_;
  const double one_m_p = 1.0 - p_;
  switch (f_.family()) {
    case Nonlinearity::Family::PowerQ: {
      const double expo = (one_m_p - f_.q()) / one_m_p;
      return one_m_p / (one_m_p - f_.q()) * std::pow(t, expo);
    }
    case Nonlinearity::Family::MaxPowers: {
      const double qlo = f_.q(), qhi = f_.r();
      const double clo = one_m_p / (one_m_p - qlo);
      const double klo = (one_m_p - qlo) / one_m_p;
      if (t <= 1.0) return clo * std::pow(t, klo);
      const double head = clo;
      if (std::abs(qhi - one_m_p) < 1e-14) return head + std::log(t);
      const double chi = one_m_p / (one_m_p - qhi);
      const double khi = (one_m_p - qhi) / one_m_p;
      return head + chi * (std::pow(t, khi) - 1.0);
    }
    case Nonlinearity::Family::SingularOneMinusU: {
      const double ks = (1.0 + f_.q() - p_) / one_m_p;
      const double c = one_m_p / (1.0 + f_.q() - p_);
      return c * (1.0 - std::pow(1.0 - t, ks));
    }
    case Nonlinearity::Family::SumPowers:
    case Nonlinearity::Family::Custom:
      return F_quadrature(t);
  }
  return 0.0;
}

double Transforms::F_infinity() const {
  require(integ_ == Integrability::IntegrableAtZero, ErrorCode::NotIntegrable,
          "||F||_inf is undefined: f^(-1/(1-p)) is not integrable at 0");
  return f_infinity_;
}

double Transforms::F_inverse(double y) const {
  require(integ_ == Integrability::IntegrableAtZero, ErrorCode::NotIntegrable,
          "F inverse is undefined: f^(-1/(1-p)) is not integrable at 0");
  require(y >= 0.0, ErrorCode::DomainError, "F inverse needs y >= 0");
  if (y == 0.0) return 0.0;
  if (y >= f_infinity_) return f_.upper_limit();  // saturation regime
  const double one_m_p = 1.0 - p_;
  switch (f_.family()) {
    case Nonlinearity::Family::PowerQ: {
      const double expo = (one_m_p - f_.q()) / one_m_p;
      return std::pow(y * (one_m_p - f_.q()) / one_m_p, 1.0 / expo);
    }
    case Nonlinearity::Family::MaxPowers: {
      const double qlo = f_.q(), qhi = f_.r();
      const double clo = one_m_p / (one_m_p - qlo);
      const double klo = (one_m_p - qlo) / one_m_p;
      if (y <= clo) return std::pow(y / clo, 1.0 / klo);
      if (std::abs(qhi - one_m_p) < 1e-14) return std::exp(y - clo);
      const double chi = one_m_p / (one_m_p - qhi);
      const double khi = (one_m_p - qhi) / one_m_p;
      return std::pow((y - clo) / chi + 1.0, 1.0 / khi);
    }
    case Nonlinearity::Family::SingularOneMinusU: {
      const double ks = (1.0 + f_.q() - p_) / one_m_p;
      const double c = one_m_p / (1.0 + f_.q() - p_);
      return 1.0 - std::pow(1.0 - y / c, 1.0 / ks);
    }
    case Nonlinearity::Family::SumPowers:
    case Nonlinearity::Family::Custom: {
      // monotone bisection against quadrature values of F
      double hi = 1.0;
      const double cap = std::isfinite(f_.upper_limit())
                             ? f_.upper_limit() * (1.0 - 1e-15)
                             : kInf;
      hi = std::min(hi, cap);
      while (F(hi) < y && hi < cap) hi = std::min(hi * 2.0, cap);
      return num::invert_monotone([this](double t) { return F(t); }, y, 0.0, hi,
                                  /*increasing=*/true);
    }
  }
  return 0.0;
}

bool Transforms::G_available() const { return g_available_; }

double Transforms::G(double t) const {
  require(g_available_, ErrorCode::NoPositivePrimitive,
          "G is unavailable (integrable at 0, or divergent tail)");
  require(t > 0.0 && t < f_.upper_limit(), ErrorCode::DomainError,
          "G argument outside (0, a_f)");
  const double one_m_p = 1.0 - p_;
  switch (f_.family()) {
    case Nonlinearity::Family::PowerQ: {
      const double k = (p_ + f_.q() - 1.0) / one_m_p;  // positive here
      return one_m_p / (p_ + f_.q() - 1.0) * std::pow(t, -k);
    }
    case Nonlinearity::Family::MaxPowers: {
      const double qlo = f_.q(), qhi = f_.r();
      const double khi = (p_ + qhi - 1.0) / one_m_p;
      const double g1 = one_m_p / (p_ + qhi - 1.0);
      if (t >= 1.0) return g1 * std::pow(t, -khi);
      if (std::abs(qlo - one_m_p) < 1e-14) return g1 - std::log(t);
      const double klo = (p_ + qlo - 1.0) / one_m_p;
      return g1 + one_m_p / (p_ + qlo - 1.0) * (std::pow(t, -klo) - 1.0);
    }
    default:
      return tail_from(t);
  }
}

double Transforms::G_inverse(double y) const {
  require(g_available_, ErrorCode::NoPositivePrimitive,
          "G is unavailable (integrable at 0, or divergent tail)");
  require(y > 0.0, ErrorCode::DomainError, "G inverse needs y > 0");
  const double one_m_p = 1.0 - p_;
  if (f_.family() == Nonlinearity::Family::PowerQ) {
    const double k = (p_ + f_.q() - 1.0) / one_m_p;
    return std::pow(one_m_p / ((p_ + f_.q() - 1.0) * y), 1.0 / k);
  }
  // bracket a decreasing G
  double lo = 1.0, hi = 1.0;
  const double af = f_.upper_limit();
  if (std::isfinite(af)) {
    lo = af * 0.5;
    hi = af * (1.0 - 1e-15);
    while (G(lo) < y && lo > af * 1e-300) lo *= 0.5;
  } else {
    while (G(lo) < y && lo > 1e-300) lo *= 0.5;
    while (G(hi) > y && hi < 1e300) hi *= 2.0;
  }
  return num::invert_monotone([this](double t) { return G(t); }, y, lo, hi,
                              /*increasing=*/false);
}

double Transforms::integral_between(double a, double b) const {
  require(a > 0.0 && b >= a && b < f_.upper_limit(), ErrorCode::DomainError,
          "integral_between needs 0 < a <= b < a_f");
  if (a == b) return 0.0;
  const double one_m_p = 1.0 - p_;
  switch (f_.family()) {
    case Nonlinearity::Family::PowerQ: {
      if (std::abs(f_.q() - one_m_p) < 1e-14) return std::log(b / a);
      const double expo = (one_m_p - f_.q()) / one_m_p;
      const double c = one_m_p / (one_m_p - f_.q());
      return c * (std::pow(b, expo) - std::pow(a, expo));
    }
    case Nonlinearity::Family::SingularOneMinusU:
      return F(b) - F(a);
    default: {
      auto integrand = [this](double s) { return std::pow(f_(s), -e_); };
      return num::integrate(integrand, a, b);
    }
  }
}

double eval_f(const Nonlinearity& f, double s) { return f(s); }
double big_f(const Nonlinearity& f, double p, double t) {
  return Transforms(f, p).F(t);
}
double big_f_inverse(const Nonlinearity& f, double p, double y) {
  return Transforms(f, p).F_inverse(y);
}
double big_g(const Nonlinearity& f, double p, double t) {
  return Transforms(f, p).G(t);
}
double big_g_inverse(const Nonlinearity& f, double p, double y) {
  return Transforms(f, p).G_inverse(y);
}
double f_norm_infinity(const Nonlinearity& f, double p) {
  return Transforms(f, p).F_infinity();
}

}  // namespace supersol
