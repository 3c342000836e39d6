#pragma once

// The reaction nonlinearity f and its integral transforms.
//
// Everything downstream is driven by the antiderivatives of f^(-1/(1-p)):
//   F(t) = ∫_0^t ds/f(s)^(1/(1-p))            (when integrable at 0)
//   G(t) = ∫_t^{a_f} ds/f(s)^(1/(1-p))        (when not; G(0+) = +inf)
// F is strictly increasing, G strictly decreasing. G is normalised so that
// inf G = 0, the tightest positive primitive.

#include <functional>
#include <limits>
#include <string>

#include "errors.hpp"

namespace supersol {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Nonlinearity {
 public:
  enum class Family { PowerQ, SumPowers, MaxPowers, SingularOneMinusU, Custom };

  // f(s) = s^q on [0, inf)
  static Nonlinearity power(double q);
  // f(s) = s^q + s^r on [0, inf)
  static Nonlinearity sum_powers(double q, double r);
  // f(s) = max(s^q, s^r) on [0, inf)
  static Nonlinearity max_powers(double q, double r);
  // f(s) = (1-s)^(-q) on [0, 1), q > 1
  static Nonlinearity singular_one_minus_u(double q);
  // Arbitrary evaluator with declared behaviour f(s) ~ s^zero_exponent at 0.
  // Monotonicity and the declared exponent are spot-checked at construction.
  static Nonlinearity custom(std::function<double(double)> evaluator,
                             double zero_exponent, double upper_limit);

  Family family() const { return family_; }
  double q() const { return q_; }
  double r() const { return r_; }
  /// Right end a_f of the domain [0, a_f); +inf for the power families.
  double upper_limit() const { return upper_limit_; }
  /// Growth exponent of f at 0 (gamma with f(s) = Theta(s^gamma)).
  double zero_exponent() const { return zero_exponent_; }
  /// Growth exponent at a_f = inf; NaN when unknown (Custom).
  double infinity_exponent() const { return infinity_exponent_; }

  /// f(s); throws DomainError outside [0, a_f).
  double operator()(double s) const;

  std::string describe() const;

 private:
  Nonlinearity() = default;
  Family family_ = Family::PowerQ;
  double q_ = 0.0, r_ = 0.0;
  double upper_limit_ = kInf;
  double zero_exponent_ = 0.0;
  double infinity_exponent_ = 0.0;
  std::function<double(double)> evaluator_;
};

enum class Integrability { IntegrableAtZero, NonIntegrableAtZero };

/// Whether f^(-1/(1-p)) is integrable at 0: zero exponent test
/// gamma/(1-p) < 1. Requires p in [0,1).
Integrability classify_integrability(const Nonlinearity& f, double p);

/// Precomputed transform pair for a fixed (f, p).
class Transforms {
 public:
  Transforms(const Nonlinearity& f, double p);

  const Nonlinearity& f() const { return f_; }
  double p() const { return p_; }
  Integrability integrability() const { return integ_; }

  /// F(t) for t in [0, a_f]; t = a_f gives ||F||_inf (possibly +inf).
  /// Throws NotIntegrable in the non-integrable case.
  double F(double t) const;
  /// Unique t with F(t) = y; returns a_f once y >= ||F||_inf (saturation).
  double F_inverse(double y) const;
  /// ||F||_inf = F(a_f^-), possibly +inf.
  double F_infinity() const;

  /// True when G is defined (non-integrable at 0 and convergent tail).
  bool G_available() const;
  /// G(t) for t in (0, a_f); throws NoPositivePrimitive when unavailable.
  double G(double t) const;
  /// Unique t with G(t) = y, y > 0.
  double G_inverse(double y) const;

  /// ∫_a^b f(s)^(-1/(1-p)) ds for 0 < a <= b < a_f; defined for every f
  /// (the integrand has no singularity away from 0).
  double integral_between(double a, double b) const;

 private:
  double F_quadrature(double t) const;
  double tail_from(double t) const;

  Nonlinearity f_;
  double p_ = 0.0;
  double e_ = 1.0;  // 1/(1-p)
  Integrability integ_ = Integrability::IntegrableAtZero;
  double f_infinity_ = kInf;
  bool g_available_ = false;
};

// Spec-level operation aliases (thin wrappers over Transforms).
double eval_f(const Nonlinearity& f, double s);
double big_f(const Nonlinearity& f, double p, double t);
double big_f_inverse(const Nonlinearity& f, double p, double y);
double big_g(const Nonlinearity& f, double p, double t);
double big_g_inverse(const Nonlinearity& f, double p, double y);
double f_norm_infinity(const Nonlinearity& f, double p);

}  // namespace supersol
