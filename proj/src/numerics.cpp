#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace supersol::num {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (symmetric half listed).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEstimate {
  double value;
  double error;
};

GkEstimate gk15(const Fn1& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - hw * kKronrodNodes[i]);
    fv[14 - i] = f(c + hw * kKronrodNodes[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 7; ++i) kron += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
  kron += kKronrodWeights[7] * fv[7];
  // Gauss-7 uses the odd Kronrod nodes (indices 1,3,5,7).
  for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kGaussWeights[3] * fv[7];
  kron *= hw;
  gauss *= hw;
  double err = std::abs(kron - gauss);
  err = std::pow(200.0 * err, 1.5);  // standard QUADPACK-style sharpening
  return {kron, std::min(err, std::abs(kron - gauss) * 200.0)};
}

}  // namespace

double integrate(const Fn1& f, double a, double b, double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol, rel_tol);
  struct Seg {
    double a, b, value, error;
  };
  GkEstimate first = gk15(f, a, b);
  std::vector<Seg> segs{{a, b, first.value, first.error}};
  double total = first.value;
  double total_err = first.error;
  const std::size_t max_segs = 4000;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         segs.size() < max_segs) {
    // split the segment with the largest error
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].error > segs[worst].error) worst = i;
    Seg s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) break;  // interval exhausted in doubles
    GkEstimate left = gk15(f, s.a, mid);
    GkEstimate right = gk15(f, mid, s.b);
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    segs[worst] = {s.a, mid, left.value, left.error};
    segs.push_back({mid, s.b, right.value, right.error});
  }
  if (!std::isfinite(total))
    throw Error(ErrorCode::NumericFailure, "quadrature produced a non-finite value");
  return total;
}

double integrate_singular_origin(const Fn1& f, double b, double sing,
                                 double abs_tol, double rel_tol) {
  if (b <= 0.0) return 0.0;
  if (sing <= 0.0) return integrate(f, 0.0, b, abs_tol, rel_tol);
  if (sing >= 1.0)
    throw Error(ErrorCode::NotIntegrable, "endpoint singularity is not integrable");
  // s = sigma^(1/(1-sing)); ds = m sigma^(m-1) dsigma with m = 1/(1-sing)
  const double m = 1.0 / (1.0 - sing);
  const double upper = std::pow(b, 1.0 - sing);
  auto g = [&](double sigma) {
    if (sigma <= 0.0) return 0.0;
    const double s = std::pow(sigma, m);
    return f(s) * m * std::pow(sigma, m - 1.0);
  };
  return integrate(g, 0.0, upper, abs_tol, rel_tol);
}

double integrate_tail(const Fn1& f, double T, double decay, double abs_tol,
                      double rel_tol) {
  if (decay <= 1.0)
    throw Error(ErrorCode::NotIntegrable, "tail integral does not converge");
  // s = T u^(-1/(decay-1)): maps (0,1] to [T,inf), flattening the decay.
  const double k = 1.0 / (decay - 1.0);
  auto g = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = T * std::pow(u, -k);
    return f(s) * T * k * std::pow(u, -k - 1.0);
  };
  return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

double integrate_tail_progressive(const Fn1& f, double T, double abs_tol,
                                  double rel_tol) {
  double total = 0.0;
  double a = T;
  double width = std::max(T, 1.0);
  for (int k = 0; k < 80; ++k) {
    const double piece = integrate(f, a, a + width, abs_tol, rel_tol);
    total += piece;
    if (std::abs(piece) < std::max(abs_tol, 0.25 * rel_tol * std::abs(total)) && k > 2)
      return total;
    a += width;
    width *= 2.0;
  }
  throw Error(ErrorCode::NoPositivePrimitive,
              "tail integral did not converge under interval doubling");
}

double invert_monotone(const Fn1& g, double y, double lo, double hi,
                       bool increasing, double rel_tol) {
  double a = lo, b = hi;
  const double sign = increasing ? 1.0 : -1.0;
  double fa = sign * (g(a) - y);
  double fb = sign * (g(b) - y);
  if (fa > 0.0) return a;  // y below range
  if (fb < 0.0) return b;  // y above range
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = sign * (g(mid) - y);
    if (fm <= 0.0)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double bisect(const Fn1& f, double lo, double hi, double rel_tol) {
  double a = lo, b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw Error(ErrorCode::NumericFailure, "bisect: no sign change in bracket");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(1.0, std::abs(mid))) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// --- Dormand-Prince 5(4) ---

namespace {
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
}  // namespace

OdeResult integrate_ode(const OdeRhs& f, double t0, double t1,
                        const std::vector<double>& y0,
                        const std::vector<double>& t_out, const OdeOptions& opts) {
  const std::size_t n = y0.size();
  OdeResult out;
  std::vector<double> y = y0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n),
      ynew(n), yerr(n);
  double t = t0;
  f(t, y, k1);

  std::size_t next_out = 0;
  auto emit_through = [&](double tt, const std::vector<double>& yy) {
    while (next_out < t_out.size() && t_out[next_out] <= tt + 1e-300) {
      out.t.push_back(t_out[next_out]);
      out.y.push_back(yy);
      ++next_out;
    }
  };
  if (!t_out.empty() && t_out.front() <= t0) emit_through(t0, y);

  double h = opts.initial_step;
  if (h <= 0.0) h = (t1 - t0) * 1e-4;
  if (opts.max_step > 0.0) h = std::min(h, opts.max_step);

  while (t < t1 && out.steps < opts.max_steps) {
    // land exactly on the next requested output point
    double target = t1;
    if (next_out < t_out.size()) target = std::min(target, t_out[next_out]);
    if (t + h > target) h = target - t;
    if (h <= std::abs(t) * 1e-16 + 1e-300) {
      // step underflow at an output node: emit and move on
      emit_through(t, y);
      if (next_out >= t_out.size() && t >= t1) break;
      h = std::max((t1 - t0) * 1e-12, 1e-300);
      continue;
    }

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * A21 * k1[i];
    f(t + h / 5.0, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
    f(t + 3.0 * h / 10.0, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
    f(t + 4.0 * h / 5.0, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
    f(t + 8.0 * h / 9.0, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] +
                            A64 * k4[i] + A65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                            B6 * k6[i]);
    f(t + h, ynew, k7);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                     E6 * k6[i] + E7 * k7[i]);
      const double sc =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = yerr[i] / sc;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(n));
    ++out.steps;

    if (err <= 1.0 || h <= std::abs(t) * 4e-16 + 1e-300) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      emit_through(t, y);
      if (opts.stop && opts.stop(t, y)) {
        out.stopped_early = true;
        break;
      }
    }
    double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    factor = std::min(5.0, std::max(0.2, factor));
    h *= factor;
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
  }
  return out;
}

OdeResult integrate_ode_rk4(const OdeRhs& f, double t0, double t1,
                            const std::vector<double>& y0, std::size_t nsteps) {
  const std::size_t n = y0.size();
  OdeResult out;
  out.t.reserve(nsteps + 1);
  out.y.reserve(nsteps + 1);
  std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), ytmp(n);
  const double h = (t1 - t0) / static_cast<double>(nsteps);
  out.t.push_back(t0);
  out.y.push_back(y);
  for (std::size_t s = 0; s < nsteps; ++s) {
    const double t = t0 + h * static_cast<double>(s);
    f(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * k3[i];
    f(t + h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.t.push_back(t + h);
    out.y.push_back(y);
    out.steps++;
  }
  return out;
}

std::vector<double> halton(std::size_t i, int dim) {
  static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                   23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (int d = 0; d < dim; ++d) {
    const int base = primes[d % 16];
    double f = 1.0, r = 0.0;
    std::size_t n = i + 1;  // skip the all-zero point
    while (n > 0) {
      f /= base;
      r += f * static_cast<double>(n % static_cast<std::size_t>(base));
      n /= static_cast<std::size_t>(base);
    }
    x[static_cast<std::size_t>(d)] = r;
  }
  return x;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  LineFit fit;
  fit.slope = denom != 0.0 ? (dn * sxy - sx * sy) / denom : 0.0;
  fit.intercept = (sy - fit.slope * sx) / dn;
  for (std::size_t i = 0; i < n; ++i)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  return fit;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v[n - 1] = b;
  return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
  std::vector<double> v = linspace(std::log(a), std::log(b), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

int worker_thread_cap() {
  if (const char* env = std::getenv("SUPERSOL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const int cap = worker_thread_cap();
  if (cap <= 1 || n < 64) {
    fn(0, n);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(cap), n);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] { fn(begin, end); });
  }
  for (auto& th : threads) th.join();
}

}  // namespace supersol::num

namespace supersol {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::NoPositivePrimitive: return "NoPositivePrimitive";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::Blowup: return "Blowup";
    case ErrorCode::ExistenceConditionFailed: return "ExistenceConditionFailed";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

}  // namespace supersol
