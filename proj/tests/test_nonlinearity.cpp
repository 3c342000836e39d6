#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nonlinearity.hpp"
#include "numerics.hpp"

using namespace supersol;

namespace {
Nonlinearity wrap_as_custom(const Nonlinearity& f) {
  return Nonlinearity::custom([f](double s) { return f(s); }, f.zero_exponent(),
                              f.upper_limit());
}
}  // namespace

TEST_CASE("eval_f on the built-in families") {
  CHECK(eval_f(Nonlinearity::power(2.0), 3.0) == doctest::Approx(9.0));
  CHECK(eval_f(Nonlinearity::max_powers(0.5, 2.0), 0.25) == doctest::Approx(0.5));
  CHECK(eval_f(Nonlinearity::singular_one_minus_u(2.0), 0.5) == doctest::Approx(4.0));
  CHECK(eval_f(Nonlinearity::sum_powers(0.5, 2.0), 4.0) ==
        doctest::Approx(2.0 + 16.0));
}

TEST_CASE("eval_f domain errors") {
  CHECK_THROWS_AS(eval_f(Nonlinearity::power(2.0), -1.0), Error);
  CHECK_THROWS_AS(eval_f(Nonlinearity::singular_one_minus_u(2.0), 1.0), Error);
  CHECK_THROWS_AS(eval_f(Nonlinearity::singular_one_minus_u(2.0), 1.5), Error);
}

TEST_CASE("custom construction rejects bad evaluators") {
  // decreasing
  CHECK_THROWS_AS(Nonlinearity::custom([](double s) { return 2.0 - s; }, 0.0, 1.0),
                  Error);
  // wrong declared zero exponent (f ~ s^2, declared 1)
  CHECK_THROWS_AS(
      Nonlinearity::custom([](double s) { return s * s; }, 1.0, kInf), Error);
  // vanishing on part of the grid
  CHECK_THROWS_AS(
      Nonlinearity::custom([](double) { return 0.0; }, 0.0, kInf), Error);
}

TEST_CASE("integrability classification by the zero-exponent test") {
  using I = Integrability;
  CHECK(classify_integrability(Nonlinearity::power(0.5), 0.0) == I::IntegrableAtZero);
  CHECK(classify_integrability(Nonlinearity::power(2.0), 0.0) ==
        I::NonIntegrableAtZero);
  CHECK(classify_integrability(Nonlinearity::power(1.0), 0.5) ==
        I::NonIntegrableAtZero);
  // boundary q = 1-p diverges logarithmically
  CHECK(classify_integrability(Nonlinearity::power(1.0), 0.0) ==
        I::NonIntegrableAtZero);
  CHECK(classify_integrability(Nonlinearity::singular_one_minus_u(2.0), 0.5) ==
        I::IntegrableAtZero);
  CHECK(classify_integrability(Nonlinearity::max_powers(0.5, 2.0), 0.0) ==
        I::IntegrableAtZero);
  CHECK(classify_integrability(Nonlinearity::sum_powers(1.5, 2.0), 0.0) ==
        I::NonIntegrableAtZero);
}

TEST_CASE("F on closed forms") {
  // ∫_0^4 s^(-1/2) ds = 2 sqrt(4)
  CHECK(big_f(Nonlinearity::power(0.5), 0.0, 4.0) == doctest::Approx(4.0).epsilon(1e-14));
  // singular family: (1-p)/(1+q-p) [1 - (1-t)^((1+q-p)/(1-p))], full mass 0.2
  CHECK(big_f(Nonlinearity::singular_one_minus_u(2.0), 0.5, 1.0) ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK(big_f(Nonlinearity::singular_one_minus_u(2.0), 0.5, 0.3) ==
        doctest::Approx(0.2 * (1.0 - std::pow(0.7, 5.0))).epsilon(1e-14));
  // max(s^q, s^r) splits at s = 1
  const Nonlinearity mx = Nonlinearity::max_powers(0.5, 2.0);
  CHECK(big_f(mx, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(big_f(mx, 0.0, 2.0) == doctest::Approx(2.0 + (1.0 - 0.5)).epsilon(1e-14));
}

TEST_CASE("F of the sum family by quadrature, frozen against mpmath") {
  const Nonlinearity sp = Nonlinearity::sum_powers(0.5, 2.0);
  // ∫_0^inf ds/(sqrt(s) + s^2), computed independently at 30 digits
  const double frozen = 2.41839915231229045;
  const double v = f_norm_infinity(sp, 0.0);
  CHECK(v == doctest::Approx(frozen).epsilon(1e-8));
  CHECK(v > 2.3);
  CHECK(v < 2.6);
  CHECK(big_f(sp, 0.0, 1.0) == doctest::Approx(1.67129769652944209).epsilon(1e-8));
  CHECK(big_f(sp, 0.0, 4.0) == doctest::Approx(2.18000346045692105).epsilon(1e-8));
}

TEST_CASE("F inverse: examples and saturation") {
  CHECK(big_f_inverse(Nonlinearity::power(0.5), 0.0, 4.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(big_f_inverse(Nonlinearity::power(0.5), 0.0, 0.0) == 0.0);
  CHECK(big_f_inverse(Nonlinearity::max_powers(0.5, 2.0), 0.0, 0.0) == 0.0);
  // bisection against the closed form (1-t)^5 = 1/2
  CHECK(big_f_inverse(Nonlinearity::singular_one_minus_u(2.0), 0.5, 0.1) ==
        doctest::Approx(1.0 - std::pow(2.0, -0.2)).epsilon(1e-12));
  // saturation: y >= ||F||_inf returns a_f
  CHECK(big_f_inverse(Nonlinearity::singular_one_minus_u(2.0), 0.5, 0.25) == 1.0);
  CHECK(std::isinf(big_f_inverse(Nonlinearity::max_powers(0.5, 2.0), 0.0, 3.5)));
}

TEST_CASE("||F||_inf examples") {
  // (1-p)/(1-p-q) + (1-p)/(p+r-1) = 2 + 1
  CHECK(f_norm_infinity(Nonlinearity::max_powers(0.5, 2.0), 0.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::isinf(f_norm_infinity(Nonlinearity::power(0.5), 0.0)));
  CHECK(f_norm_infinity(Nonlinearity::singular_one_minus_u(2.0), 0.5) ==
        doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("G: closed forms and inverse") {
  CHECK(big_g(Nonlinearity::power(2.0), 0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  // symbolic antiderivative (1-p)/(p+q-1) t^(-1), validated by quadrature below
  CHECK(big_g(Nonlinearity::power(1.0), 0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(big_g_inverse(Nonlinearity::power(2.0), 0.0, 0.5) ==
        doctest::Approx(2.0).epsilon(1e-11));
  // quadrature route agrees with the closed form
  const Transforms closed(Nonlinearity::power(1.0), 0.5);
  const Transforms quad(wrap_as_custom(Nonlinearity::power(1.0)), 0.5);
  for (double t : {0.5, 1.0, 2.0, 7.0})
    CHECK(quad.G(t) == doctest::Approx(closed.G(t)).epsilon(1e-7));
}

TEST_CASE("G unavailable in the logarithmic case") {
  CHECK_THROWS_AS(big_g(Nonlinearity::power(1.0), 0.0, 1.0), Error);
  CHECK_THROWS_AS(big_g(Nonlinearity::max_powers(1.0, 1.0), 0.0, 0.5), Error);
  // and for integrable nonlinearities
  CHECK_THROWS_AS(big_g(Nonlinearity::power(0.5), 0.0, 1.0), Error);
}

TEST_CASE("F errors in the non-integrable case") {
  CHECK_THROWS_AS(big_f(Nonlinearity::power(2.0), 0.0, 1.0), Error);
  CHECK_THROWS_AS(f_norm_infinity(Nonlinearity::power(2.0), 0.0), Error);
}

TEST_CASE("monotonicity of F and G over a log grid") {
  const Transforms tf(Nonlinearity::sum_powers(0.5, 2.0), 0.25);
  double prev = -1.0;
  for (double t : num::logspace(1e-6, 1e3, 40)) {
    const double v = tf.F(t);
    CHECK(v > prev);
    prev = v;
  }
  const Transforms tg(Nonlinearity::power(2.0), 0.0);
  prev = kInf;
  for (double t : num::logspace(1e-6, 1e3, 40)) {
    const double v = tg.G(t);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("round trips: F then F^{-1}, G then G^{-1}") {
  struct Case {
    Nonlinearity f;
    double p;
  };
  const Case f_cases[] = {
      {Nonlinearity::power(0.5), 0.0},
      {Nonlinearity::power(0.3), 0.4},
      {Nonlinearity::max_powers(0.5, 2.0), 0.0},
      {Nonlinearity::sum_powers(0.5, 2.0), 0.0},
      {Nonlinearity::singular_one_minus_u(2.0), 0.5},
  };
  for (const auto& c : f_cases) {
    const Transforms tr(c.f, c.p);
    const double hi = std::isfinite(c.f.upper_limit())
                          ? c.f.upper_limit() * (1.0 - 1e-6)
                          : 1e3;
    for (double t : num::logspace(1e-6, hi, 25)) {
      const double back = tr.F_inverse(tr.F(t));
      CHECK(std::abs(back - t) <= 1e-10 * std::max(1.0, t));
    }
  }
  const Case g_cases[] = {
      {Nonlinearity::power(2.0), 0.0},
      {Nonlinearity::power(1.7), 0.3},
      {Nonlinearity::max_powers(1.2, 3.0), 0.0},
      {Nonlinearity::sum_powers(1.5, 2.5), 0.0},
  };
  for (const auto& c : g_cases) {
    const Transforms tr(c.f, c.p);
    REQUIRE(tr.G_available());
    for (double t : num::logspace(1e-4, 1e3, 25)) {
      const double back = tr.G_inverse(tr.G(t));
      CHECK(std::abs(back - t) <= 1e-9 * std::max(1.0, t));
    }
  }
}

TEST_CASE("wrapping a family as custom reproduces F") {
  struct Case {
    Nonlinearity f;
    double p;
  };
  const Case cases[] = {
      {Nonlinearity::power(0.5), 0.0},
      {Nonlinearity::max_powers(0.5, 2.0), 0.25},
      {Nonlinearity::singular_one_minus_u(2.0), 0.5},
  };
  for (const auto& c : cases) {
    const Transforms closed(c.f, c.p);
    const Transforms quad(wrap_as_custom(c.f), c.p);
    const double hi = std::isfinite(c.f.upper_limit())
                          ? c.f.upper_limit() * (1.0 - 1e-9)
                          : 50.0;
    for (double t : num::logspace(1e-4, hi, 12)) {
      const double a = closed.F(t);
      const double b = quad.F(t);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("integral_between agrees with F differences and handles logs") {
  const Transforms tr(Nonlinearity::power(0.5), 0.0);
  CHECK(tr.integral_between(1.0, 4.0) ==
        doctest::Approx(tr.F(4.0) - tr.F(1.0)).epsilon(1e-12));
  // logarithmic case q = 1-p
  const Transforms lg(Nonlinearity::power(1.0), 0.0);
  CHECK(lg.integral_between(2.0, 8.0) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  // non-integrable power: matches G differences
  const Transforms g(Nonlinearity::power(2.0), 0.0);
  CHECK(g.integral_between(1.0, 3.0) ==
        doctest::Approx(g.G(1.0) - g.G(3.0)).epsilon(1e-12));
}
