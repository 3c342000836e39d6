#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "numerics.hpp"

using namespace supersol;
using namespace supersol::num;

TEST_CASE("adaptive quadrature matches closed forms") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // a mildly oscillatory one
  CHECK(integrate([](double x) { return std::cos(10.0 * x); }, 0.0, 2.0) ==
        doctest::Approx(std::sin(20.0) / 10.0).epsilon(1e-10));
  // orientation
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("origin power singularity is removed by substitution") {
  // ∫_0^1 x^(-1/2) dx = 2
  const double v =
      integrate_singular_origin([](double x) { return 1.0 / std::sqrt(x); }, 1.0, 0.5);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  // ∫_0^4 x^(-1/3) dx = (3/2) 4^(2/3)
  const double w = integrate_singular_origin(
      [](double x) { return std::pow(x, -1.0 / 3.0); }, 4.0, 1.0 / 3.0);
  CHECK(w == doctest::Approx(1.5 * std::pow(4.0, 2.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("tail integrals") {
  // ∫_1^inf x^(-2) dx = 1
  CHECK(integrate_tail([](double x) { return 1.0 / (x * x); }, 1.0, 2.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // ∫_2^inf x^(-1.5) dx = 2/sqrt(2)
  CHECK(integrate_tail([](double x) { return std::pow(x, -1.5); }, 2.0, 1.5) ==
        doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(integrate_tail_progressive([](double x) { return std::exp(-x); }, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("monotone inversion") {
  const double r = invert_monotone([](double t) { return t * t * t; }, 8.0, 0.0,
                                   10.0, true);
  CHECK(r == doctest::Approx(2.0).epsilon(1e-11));
  const double s =
      invert_monotone([](double t) { return 1.0 / t; }, 0.25, 0.1, 100.0, false);
  CHECK(s == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("adaptive RK integrates exp and the harmonic oscillator") {
  OdeRhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[0];
  };
  auto res = integrate_ode(rhs, 0.0, 1.0, {1.0}, linspace(0.0, 1.0, 11));
  REQUIRE(res.t.size() == 11);
  for (std::size_t i = 0; i < res.t.size(); ++i)
    CHECK(res.y[i][0] == doctest::Approx(std::exp(res.t[i])).epsilon(1e-9));

  OdeRhs osc = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  auto r2 = integrate_ode(osc, 0.0, 10.0, {1.0, 0.0}, {10.0});
  REQUIRE(r2.t.size() == 1);
  CHECK(r2.y[0][0] == doctest::Approx(std::cos(10.0)).epsilon(1e-8));
  CHECK(r2.y[0][1] == doctest::Approx(-std::sin(10.0)).epsilon(1e-8));

  auto r3 = integrate_ode_rk4(osc, 0.0, 1.0, {1.0, 0.0}, 200);
  CHECK(r3.y.back()[0] == doctest::Approx(std::cos(1.0)).epsilon(1e-9));
}

TEST_CASE("ode stop condition halts integration") {
  OdeRhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = -y[0];
  };
  OdeOptions opts;
  opts.stop = [](double, const std::vector<double>& y) { return y[0] < 0.5; };
  auto res = integrate_ode(rhs, 0.0, 10.0, {1.0}, linspace(0.0, 10.0, 101), opts);
  CHECK(res.stopped_early);
  CHECK(res.t.back() < 1.5);  // crossing is at log 2 ~ 0.69
}

TEST_CASE("halton fills the unit square reasonably") {
  double minx = 1.0, maxx = 0.0;
  for (std::size_t i = 0; i < 256; ++i) {
    const auto x = halton(i, 2);
    REQUIRE(x.size() == 2);
    CHECK(x[0] >= 0.0);
    CHECK(x[0] < 1.0);
    minx = std::min(minx, x[0]);
    maxx = std::max(maxx, x[0]);
  }
  CHECK(minx < 0.05);
  CHECK(maxx > 0.95);
}

TEST_CASE("line fit recovers a line") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(0.1 * i);
    ys.push_back(3.0 - 2.0 * 0.1 * i);
  }
  const auto fit = fit_line(xs, ys);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.max_residual < 1e-12);
}

TEST_CASE("parallel_for covers the range exactly once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hits[i] += 1;
  });
  for (int h : hits) CHECK(h == 1);
}
