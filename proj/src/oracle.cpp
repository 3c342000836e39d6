#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "numerics.hpp"

namespace supersol {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& shape) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < shape[k]) return true;
    idx[k] = 0;
  }
  return false;
}

double median_abs(std::vector<double> v) {
  if (v.empty()) return 0.0;
  for (double& x : v) x = std::abs(x);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2),
                   v.end());
  return v[v.size() / 2];
}

}  // namespace

GridFunction GridFunction::sample(int dim, const Point& lo, const Point& hi,
                                  double h, const Evaluator& fn) {
  require(dim >= 1 && static_cast<int>(lo.size()) == dim &&
              static_cast<int>(hi.size()) == dim && h > 0.0,
          ErrorCode::DomainError, "inconsistent grid box");
  GridFunction g;
  g.dim = dim;
  g.lo = lo;
  g.h = h;
  g.shape.resize(static_cast<std::size_t>(dim));
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) {
    const double extent = hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)];
    require(extent > 0.0, ErrorCode::DomainError, "empty grid box");
    g.shape[static_cast<std::size_t>(k)] =
        static_cast<std::size_t>(std::llround(extent / h)) + 1;
    total *= g.shape[static_cast<std::size_t>(k)];
  }
  g.values.resize(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  std::size_t flat = 0;
  do {
    g.values[flat++] = fn(g.point_at(idx));
  } while (advance(idx, g.shape));
  return g;
}

std::size_t GridFunction::flat_index(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) flat = flat * shape[k] + idx[k];
  return flat;
}

Point GridFunction::point_at(const std::vector<std::size_t>& idx) const {
  Point x(static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < x.size(); ++k)
    x[k] = lo[k] + h * static_cast<double>(idx[k]);
  return x;
}

double& GridFunction::at(const std::vector<std::size_t>& idx) {
  return values[flat_index(idx)];
}
double GridFunction::at(const std::vector<std::size_t>& idx) const {
  return values[flat_index(idx)];
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
  os << "# dim=" << g.dim << " h=";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", g.h);
  os << buf << " lo=";
  for (int k = 0; k < g.dim; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", g.lo[static_cast<std::size_t>(k)]);
    os << (k ? "," : "") << buf;
  }
  os << " shape=";
  for (int k = 0; k < g.dim; ++k)
    os << (k ? "," : "") << g.shape[static_cast<std::size_t>(k)];
  os << "\n";
  std::vector<std::size_t> idx(static_cast<std::size_t>(g.dim), 0);
  do {
    const Point x = g.point_at(idx);
    for (double c : x) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      os << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", g.at(idx));
    os << buf << "\n";
  } while (advance(idx, g.shape));
}

GridFunction read_grid_csv(std::istream& is) {
  std::string header;
  require(static_cast<bool>(std::getline(is, header)) && header.rfind("# ", 0) == 0,
          ErrorCode::ConfigError, "grid csv: missing header line");
  GridFunction g;
  std::istringstream hs(header.substr(2));
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    require(eq != std::string::npos, ErrorCode::ConfigError, "grid csv: bad header");
    const std::string key = tok.substr(0, eq);
    std::string val = tok.substr(eq + 1);
    std::replace(val.begin(), val.end(), ',', ' ');
    std::istringstream vs(val);
    if (key == "dim") {
      vs >> g.dim;
    } else if (key == "h") {
      vs >> g.h;
    } else if (key == "lo") {
      double c;
      while (vs >> c) g.lo.push_back(c);
    } else if (key == "shape") {
      std::size_t n;
      while (vs >> n) g.shape.push_back(n);
    }
  }
  require(g.dim >= 1 && static_cast<int>(g.lo.size()) == g.dim &&
              static_cast<int>(g.shape.size()) == g.dim && g.h > 0.0,
          ErrorCode::ConfigError, "grid csv: incomplete header");
  std::size_t total = 1;
  for (std::size_t s : g.shape) total *= s;
  g.values.reserve(total);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto last = line.find_last_of(',');
    require(last != std::string::npos, ErrorCode::ConfigError, "grid csv: bad row");
    g.values.push_back(std::stod(line.substr(last + 1)));
  }
  require(g.values.size() == total, ErrorCode::ConfigError,
          "grid csv: row count does not match the declared shape");
  return g;
}

void write_radial_profile_csv(std::ostream& os, const RadialProfile& prof) {
  os << "r,value,derivative\n";
  char buf[200];
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", prof.radii[i],
                  prof.values[i],
                  i < prof.derivatives.size() ? prof.derivatives[i] : 0.0);
    os << buf;
  }
}

RadialProfile read_radial_profile_csv(std::istream& is) {
  RadialProfile prof;
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line == "r,value,derivative",
          ErrorCode::ConfigError, "radial profile csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double r, v, d;
    require(static_cast<bool>(ls >> r >> v >> d), ErrorCode::ConfigError,
            "radial profile csv: bad row");
    prof.radii.push_back(r);
    prof.values.push_back(v);
    prof.derivatives.push_back(d);
  }
  return prof;
}

namespace {

using RhsAt = std::function<double(const Point&, double, double)>;

struct GenericResidual {
  GridFunction field;
  double min = 0.0, max = 0.0, scale = 0.0, order = 0.0, tol = 0.0;
  std::size_t nodes = 0;
};

double node_residual(const GridFunction& u, const std::vector<std::size_t>& idx,
                     std::size_t stride, const RhsAt& rhs, double* lhs_out = nullptr,
                     double* rhs_out = nullptr) {
  const double hs = u.h * static_cast<double>(stride);
  std::vector<std::size_t> nb = idx;
  const double uc = u.at(idx);
  double lap = 0.0, grad_sq = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    nb[k] = idx[k] + stride;
    const double up = u.at(nb);
    nb[k] = idx[k] - stride;
    const double um = u.at(nb);
    nb[k] = idx[k];
    lap += (up - 2.0 * uc + um) / (hs * hs);
    const double g = (up - um) / (2.0 * hs);
    grad_sq += g * g;
  }
  const double lhs = -lap;
  const double rv = rhs(u.point_at(idx), uc, std::sqrt(grad_sq));
  if (lhs_out) *lhs_out = lhs;
  if (rhs_out) *rhs_out = rv;
  return lhs - rv;
}

GenericResidual fd_residual_generic(const GridFunction& u, const RhsAt& rhs) {
  require(u.dim >= 1, ErrorCode::DomainError, "empty grid");
  for (std::size_t s : u.shape)
    require(s >= 3, ErrorCode::GridTooCoarse, "grid needs at least 3 nodes per axis");

  GenericResidual out;
  out.field = u;
  std::fill(out.field.values.begin(), out.field.values.end(), 0.0);

  // enumerate interior nodes
  std::vector<std::vector<std::size_t>> interior;
  std::vector<std::size_t> idx(static_cast<std::size_t>(u.dim), 0);
  do {
    bool inner1 = true, inner4 = true;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      inner1 &= idx[k] >= 1 && idx[k] + 1 < u.shape[k];
      inner4 &= idx[k] >= 4 && idx[k] + 4 < u.shape[k];
    }
    if (inner1) interior.push_back(idx);
    (void)inner4;
  } while (advance(idx, u.shape));

  out.nodes = interior.size();
  std::vector<double> res(interior.size());
  std::vector<double> scales(interior.size());
  num::parallel_for(interior.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double lhs, rv;
      res[i] = node_residual(u, interior[i], 1, rhs, &lhs, &rv);
      scales[i] = std::max(std::abs(lhs), std::abs(rv));
      out.field.values[out.field.flat_index(interior[i])] = res[i];
    }
  });
  out.min = *std::min_element(res.begin(), res.end());
  out.max = *std::max_element(res.begin(), res.end());
  out.scale = *std::max_element(scales.begin(), scales.end());

  // stride 1 vs 2 vs 4 at deep-interior nodes for the order estimate
  std::vector<double> d21, d42;
  for (const auto& node : interior) {
    bool deep = true;
    for (std::size_t k = 0; k < node.size(); ++k)
      deep &= node[k] >= 4 && node[k] + 4 < u.shape[k];
    if (!deep) continue;
    const double r1 = node_residual(u, node, 1, rhs);
    const double r2 = node_residual(u, node, 2, rhs);
    const double r4 = node_residual(u, node, 4, rhs);
    d21.push_back(r2 - r1);
    d42.push_back(r4 - r2);
  }
  require(!d21.empty(), ErrorCode::GridTooCoarse,
          "grid too small for a stride-4 Richardson comparison");
  const double m21 = median_abs(d21);
  const double m42 = median_abs(d42);
  const double floor = 1e-12 * std::max(out.scale, 1.0);
  if (m21 < floor && m42 < floor) {
    out.order = 2.0;  // residual exact to rounding; stencil error invisible
  } else {
    out.order = std::log2(std::max(m42, 1e-300) / std::max(m21, 1e-300));
  }
  // r_stride1 = r_true + C h^2 and d21 ~ 3 C h^2
  out.tol = 2.0 * (m21 / 3.0) + floor;
  return out;
}

}  // namespace

ResidualField fd_residual(const ProblemSpec& spec, const GridFunction& u) {
  spec.validate();
  const double p = spec.p;
  RhsAt rhs = [&](const Point& x, double uval, double gmag) {
    return spec.weight(x) * spec.f(uval) * std::pow(gmag, p);
  };
  GenericResidual gen = fd_residual_generic(u, rhs);
  if (std::abs(gen.order - 2.0) > 0.3)
    throw Error(ErrorCode::GridTooCoarse,
                "Richardson order " + std::to_string(gen.order) +
                    " deviates from 2 by more than 0.3");
  ResidualField out;
  out.residual = std::move(gen.field);
  out.summary.min = gen.min;
  out.summary.max = gen.max;
  out.summary.scale = gen.scale;
  out.summary.order = gen.order;
  out.summary.tol = gen.tol;
  out.summary.nodes = gen.nodes;
  out.summary.supersolution_certified = gen.min >= -gen.tol;
  return out;
}

StencilResidual stencil_residual(
    const Evaluator& u, const Point& y, double h,
    const std::function<double(double, double, const Point&)>& rhs) {
  StencilResidual out;
  const double uc = u(y);
  Point probe = y;
  double lap = 0.0, grad_sq = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    probe[k] = y[k] + h;
    const double up = u(probe);
    probe[k] = y[k] - h;
    const double um = u(probe);
    probe[k] = y[k];
    lap += (up - 2.0 * uc + um) / (h * h);
    const double g = (up - um) / (2.0 * h);
    grad_sq += g * g;
  }
  out.lhs = -lap;
  out.rhs = rhs(uc, std::sqrt(grad_sq), y);
  out.residual = out.lhs - out.rhs;
  const double denom = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative = denom > 0.0 ? std::abs(out.residual) / denom : std::abs(out.residual);
  return out;
}

RadialProfile radial_ivp(const ProblemSpec& spec, double u0, double du0,
                         double r_start, double r_end, std::size_t samples) {
  spec.validate();
  require(r_start >= 0.0 && r_end > r_start && samples >= 2, ErrorCode::DomainError,
          "radial_ivp needs 0 <= r_start < r_end");
  const double N = static_cast<double>(spec.dim);
  const double p = spec.p;
  const double af = spec.f.upper_limit();
  auto source = [&](double r, double uval, double v) {
    const double uc = std::min(std::max(uval, 0.0), af * (1.0 - 1e-15));
    Point x(static_cast<std::size_t>(spec.dim), 0.0);
    x[0] = r;
    return spec.weight(x) * spec.f(uc) * std::pow(std::abs(v), p);
  };
  num::OdeRhs rhs = [&](double r, const std::vector<double>& y,
                        std::vector<double>& dy) {
    dy[0] = y[1];
    const double S = source(r, y[0], y[1]);
    if (r < 1e-10) {
      dy[1] = -S / N;  // N-fold symmetry limit of v' + (N-1) v/r = -S
    } else {
      dy[1] = -(N - 1.0) / r * y[1] - S;
    }
  };
  num::OdeOptions opts;
  opts.abs_tol = num::kOdeLocalTol;
  opts.rel_tol = num::kOdeLocalTol;
  opts.stop = [](double, const std::vector<double>& y) {
    return std::abs(y[0]) > 1e12;
  };
  const std::vector<double> grid = num::linspace(r_start, r_end, samples);
  num::OdeResult res = num::integrate_ode(rhs, r_start, r_end, {u0, du0}, grid, opts);
  if (res.stopped_early)
    throw Error(ErrorCode::Blowup, "radial profile exceeded 1e12 in magnitude");
  RadialProfile prof;
  prof.radii = grid;
  prof.values.assign(samples, 0.0);
  prof.derivatives.assign(samples, 0.0);
  for (std::size_t i = 0; i < res.t.size() && i < samples; ++i) {
    prof.values[i] = res.y[i][0];
    prof.derivatives[i] = res.y[i][1];
  }
  return prof;
}

double sampled_inf(const Evaluator& u, const Point& x, double r, int n) {
  require(n >= 1000, ErrorCode::DomainError, "sampled_inf needs n >= 1000");
  require(r > 0.0, ErrorCode::InvalidRadius, "sampled_inf needs r > 0");
  const int dim = static_cast<int>(x.size());
  double best = u(x);
  Point best_y = x;
  for (int i = 0; i < n; ++i) {
    std::vector<double> z = num::halton(static_cast<std::size_t>(i), dim);
    double zn = 0.0;
    for (double& c : z) {
      c = 2.0 * c - 1.0;
      zn += c * c;
    }
    zn = std::sqrt(zn);
    const double push = zn > 1.0 ? 1.0 / zn : 1.0;  // project corners to the sphere
    Point y = x;
    for (int k = 0; k < dim; ++k)
      y[static_cast<std::size_t>(k)] += r * push * z[static_cast<std::size_t>(k)];
    const double v = u(y);
    if (v < best) {
      best = v;
      best_y = y;
    }
  }
  // compass polish, projected onto the closed ball
  auto project = [&](Point y) {
    double d = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double c = y[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)];
      d += c * c;
    }
    d = std::sqrt(d);
    if (d > r) {
      for (int k = 0; k < dim; ++k) {
        const std::size_t kk = static_cast<std::size_t>(k);
        y[kk] = x[kk] + (y[kk] - x[kk]) * (r / d);
      }
    }
    return y;
  };
  double step = 0.25 * r;
  Point y = best_y;
  while (step > 1e-10 * r) {
    bool improved = false;
    for (int k = 0; k < dim && !improved; ++k) {
      for (double sgn : {1.0, -1.0}) {
        Point cand = y;
        cand[static_cast<std::size_t>(k)] += sgn * step;
        cand = project(cand);
        const double v = u(cand);
        if (v < best) {
          best = v;
          y = cand;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      // radial probe toward/away from the centre
      double d = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double c = y[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)];
        d += c * c;
      }
      d = std::sqrt(d);
      if (d > 0.0) {
        for (double sgn : {1.0, -1.0}) {
          Point cand = y;
          for (int k = 0; k < dim; ++k) {
            const std::size_t kk = static_cast<std::size_t>(k);
            cand[kk] += sgn * step * (y[kk] - x[kk]) / d;
          }
          cand = project(cand);
          const double v = u(cand);
          if (v < best) {
            best = v;
            y = cand;
            improved = true;
            break;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

Theorem1Check verify_theorem1(const ProblemSpec& spec, const Evaluator& u,
                              const Point& x, double r, int inf_samples) {
  spec.validate();
  const Transforms tr(spec.f, spec.p);
  Theorem1Check chk;
  chk.inf_estimate = sampled_inf(u, x, r, inf_samples);
  const double ux = u(x);
  const double m = std::min(chk.inf_estimate, ux);
  chk.lhs = m >= ux ? 0.0 : tr.integral_between(std::max(m, 1e-300), ux);
  chk.rhs = bound_argument(spec, x, r);
  chk.holds = chk.lhs >= chk.rhs - 1e-6;
  return chk;
}

TransformCheck remark2_transform_check(const ProblemSpec& spec, const Evaluator& u,
                                       const Point& lo, const Point& hi, double h) {
  spec.validate();
  TransformCheck out;
  GridFunction ug = GridFunction::sample(spec.dim, lo, hi, h, u);
  const double umin = *std::min_element(ug.values.begin(), ug.values.end());
  const double umax = *std::max_element(ug.values.begin(), ug.values.end());
  require(umin > 0.0 && umax < spec.f.upper_limit(), ErrorCode::DomainError,
          "u must take values inside (0, a_f) on the box");
  if (spec.f.family() == Nonlinearity::Family::MaxPowers && umin <= 1.0 + 1e-9 &&
      umax >= 1.0 - 1e-9) {
    out.applicable = false;  // kink of max(s^q, s^r) inside the value range
    return out;
  }
  const Transforms tr(spec.f, spec.p);
  GridFunction wg = ug;
  for (double& v : wg.values)
    v = v <= umin ? 0.0 : tr.integral_between(umin, v);
  const double p = spec.p;
  RhsAt rhs = [&](const Point& pt, double, double gmag) {
    return spec.weight(pt) * std::pow(gmag, p);
  };
  GenericResidual gen = fd_residual_generic(wg, rhs);
  out.nodes = gen.nodes;
  out.min_margin = gen.min;
  out.holds = gen.min >= -gen.tol;
  return out;
}

double harmonic_comparison(int N, double R1, double R2, double I1, double I2,
                           double x_norm) {
  require(N >= 2 && 0.0 < R1 && R1 < R2, ErrorCode::DomainError,
          "needs N >= 2 and 0 < R1 < R2");
  require(x_norm >= R1 && x_norm <= R2, ErrorCode::DomainError,
          "evaluation point must lie in the closed annulus");
  if (N == 2)
    return (I1 - I2) / (std::log(R1) - std::log(R2)) *
               (std::log(x_norm) - std::log(R2)) +
           I2;
  const double a = 2.0 - static_cast<double>(N);
  return (I1 - I2) / (std::pow(R1, a) - std::pow(R2, a)) *
             (std::pow(x_norm, a) - std::pow(R2, a)) +
         I2;
}

SuperharmonicFloor serrin_zou_floor_check(const Evaluator& u, int N,
                                          const std::vector<double>& radii,
                                          int directions) {
  require(N >= 2 && !radii.empty(), ErrorCode::DomainError,
          "needs N >= 2 and a radius ladder");
  SuperharmonicFloor out;
  out.radii = radii;

  std::vector<Point> dirs;
  dirs.reserve(static_cast<std::size_t>(directions));
  if (N == 2) {
    for (int j = 0; j < directions; ++j) {
      const double th = 2.0 * M_PI * static_cast<double>(j) / directions;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    // deterministic quasi-uniform directions: Halton-fed Box-Muller
    for (int j = 0; j < directions; ++j) {
      const auto uvec = num::halton(static_cast<std::size_t>(j), 2 * N);
      Point d(static_cast<std::size_t>(N));
      for (int k = 0; k < N; ++k) {
        const double u1 = std::min(std::max(uvec[static_cast<std::size_t>(2 * k)], 1e-12), 1.0);
        const double u2 = uvec[static_cast<std::size_t>(2 * k + 1)];
        d[static_cast<std::size_t>(k)] =
            std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      }
      const double dn = norm(d);
      if (dn < 1e-12) continue;
      for (double& c : d) c /= dn;
      dirs.push_back(d);
    }
  }

  out.infima.reserve(radii.size());
  for (double R : radii) {
    double imin = kInf;
    for (const Point& d : dirs) {
      Point x = d;
      for (double& c : x) c *= R;
      imin = std::min(imin, u(x));
    }
    out.infima.push_back(imin);
  }
  if (N > 2) {
    double c = kInf;
    for (std::size_t i = 0; i < radii.size(); ++i)
      c = std::min(c, out.infima[i] * std::pow(radii[i], static_cast<double>(N - 2)));
    out.constant = c;
  }
  out.liminf_proxy = out.infima.back();
  std::vector<double> logs(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) logs[i] = std::log(radii[i]);
  const num::LineFit fit = num::fit_line(logs, out.infima);
  out.log_intercept = fit.intercept;
  out.log_slope = fit.slope;
  out.max_fit_deviation = fit.max_residual;
  return out;
}

std::vector<char> dead_core_mask(const GridFunction& u, double grad_tol) {
  if (grad_tol < 0.0) grad_tol = 10.0 * u.h;
  std::vector<char> mask(u.size(), 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(u.dim), 0);
  do {
    bool interior = true;
    for (std::size_t k = 0; k < idx.size(); ++k)
      interior &= idx[k] >= 1 && idx[k] + 1 < u.shape[k];
    if (!interior) continue;
    std::vector<std::size_t> nb = idx;
    double grad_sq = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      nb[k] = idx[k] + 1;
      const double up = u.at(nb);
      nb[k] = idx[k] - 1;
      const double um = u.at(nb);
      nb[k] = idx[k];
      const double g = (up - um) / (2.0 * u.h);
      grad_sq += g * g;
    }
    if (std::sqrt(grad_sq) <= grad_tol) mask[u.flat_index(idx)] = 1;
  } while (advance(idx, u.shape));
  return mask;
}

}  // namespace supersol
