#include "runner.hpp"

#include <cmath>

#include "classifier.hpp"
#include "cone.hpp"
#include "numerics.hpp"
#include "oracle.hpp"
#include "report.hpp"

namespace supersol {

namespace {

constexpr const char* kLibraryVersion = "1.0.0";

JsonValue config_echo(const RunConfig& cfg) {
  JsonValue obj = JsonValue::object();
  for (const auto& [k, v] : cfg.keys) obj.add(k, JsonValue::str(v));
  return obj;
}

JsonValue provenance_block() {
  JsonValue prov = JsonValue::object();
  prov.add("library_version", JsonValue::str(kLibraryVersion));
  prov.add("quadrature_abs_tol", JsonValue::number(num::kQuadAbsTol));
  prov.add("quadrature_rel_tol", JsonValue::number(num::kQuadRelTol));
  prov.add("bisection_rel_tol", JsonValue::number(num::kBisectRelTol));
  prov.add("ode_local_tol", JsonValue::number(num::kOdeLocalTol));
  return prov;
}

JsonValue region_json(const Region& reg) {
  JsonValue r = JsonValue::object();
  const char* kind = "empty";
  switch (reg.kind) {
    case Region::Kind::Empty: kind = "empty"; break;
    case Region::Kind::BallRegion: kind = "ball"; break;
    case Region::Kind::ExteriorRegion: kind = "exterior"; break;
    case Region::Kind::AnnulusShell: kind = "annulus_shell"; break;
    case Region::Kind::DistanceAtLeast: kind = "distance_at_least"; break;
    case Region::Kind::WholeDomain: kind = "whole_domain"; break;
  }
  r.add("kind", JsonValue::str(kind));
  if (reg.kind != Region::Kind::Empty && reg.kind != Region::Kind::WholeDomain)
    r.add("radius", JsonValue::number(reg.a));
  if (reg.kind == Region::Kind::AnnulusShell)
    r.add("outer_radius", JsonValue::number(reg.b));
  r.add("description", JsonValue::str(reg.describe()));
  return r;
}

JsonValue certificate_json(const Certificate& cert) {
  JsonValue c = JsonValue::object();
  c.add("rule", JsonValue::str(cert.rule));
  JsonValue values = JsonValue::object();
  for (const auto& [name, v] : cert.values) values.add(name, JsonValue::number(v));
  c.add("checked_values", std::move(values));
  JsonValue notes = JsonValue::array();
  for (const auto& n : cert.notes) notes.push(JsonValue::str(n));
  c.add("notes", std::move(notes));
  return c;
}

struct CommandResult {
  JsonValue payload = JsonValue::object();
  int exit_code = kExitOk;
  std::vector<std::string> diagnostics;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
};

CommandResult run_classify(const RunConfig& cfg) {
  CommandResult out;
  const ProblemSpec spec = build_problem(cfg);
  const Classification cls = classify(spec);
  out.payload.add("verdict", JsonValue::str(verdict_name(cls.verdict)));
  out.payload.add("rule", JsonValue::str(cls.certificate.rule));
  out.payload.add("certificate", certificate_json(cls.certificate));
  if (cls.region) out.payload.add("region", region_json(*cls.region));
  if (cls.collar) out.payload.add("collar", JsonValue::number(*cls.collar));
  if (cls.verdict == Verdict::Inconclusive) {
    out.exit_code = kExitInconclusive;
    out.diagnostics.push_back("classification is inconclusive");
  }
  return out;
}

CommandResult run_bound(const RunConfig& cfg) {
  CommandResult out;
  const ProblemSpec spec = build_problem(cfg);
  const Point center = parse_center(cfg, spec.dim);
  const std::vector<double> radii = parse_radii(cfg);
  const BoundCurve curve = bound_curve(spec, center, radii);

  out.payload.add("kind", JsonValue::str(curve.kind == BoundCurve::Kind::LowerBound
                                             ? "lower_bound"
                                             : "inf_ball_upper_bound"));
  JsonValue cjs = JsonValue::array();
  for (double c : center) cjs.push(JsonValue::number(c));
  out.payload.add("center", std::move(cjs));
  JsonValue rjs = JsonValue::array(), vjs = JsonValue::array(), sjs = JsonValue::array();
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    rjs.push(JsonValue::number(curve.radii[i]));
    vjs.push(JsonValue::number(curve.values[i]));
    sjs.push(JsonValue::boolean(curve.saturated[i] != 0));
  }
  out.payload.add("radii", std::move(rjs));
  out.payload.add("values", std::move(vjs));
  out.payload.add("saturated", std::move(sjs));
  out.csv = bound_curve_csv(curve);
  out.svg = bound_curve_svg(curve);
  return out;
}

CommandResult run_deadcore(const RunConfig& cfg) {
  CommandResult out;
  const ProblemSpec spec = build_problem(cfg);
  const Transforms tr(spec.f, spec.p);
  const bool integrable = tr.integrability() == Integrability::IntegrableAtZero;
  if (!integrable || !std::isfinite(tr.F_infinity())) {
    out.payload.add("applicable", JsonValue::boolean(false));
    out.payload.add("reason",
                    JsonValue::str(!integrable
                                       ? "f^(-1/(1-p)) is not integrable at 0"
                                       : "||F||_inf is infinite"));
    out.exit_code = kExitInconclusive;
    out.diagnostics.push_back("no dead-core threshold for this nonlinearity");
    return out;
  }
  const double c = spec.weight.kind() == Weight::Kind::Constant
                       ? spec.weight.constant_value()
                       : 1.0;
  if (spec.weight.kind() != Weight::Kind::RadialPower) {
    const double thr = deadcore_threshold_scaled(spec.f, spec.p, spec.dim, c);
    const Region reg = deadcore_region(spec.domain, thr);
    out.payload.add("applicable", JsonValue::boolean(true));
    out.payload.add("alpha", JsonValue::number(alpha(spec.dim, spec.p)));
    out.payload.add("F_infinity", JsonValue::number(tr.F_infinity()));
    out.payload.add("threshold", JsonValue::number(thr));
    out.payload.add("sup_inradius", JsonValue::number(spec.domain.sup_inradius()));
    out.payload.add("forced", JsonValue::boolean(spec.domain.sup_inradius() > thr));
    out.payload.add("region", region_json(reg));
    if (!(spec.domain.sup_inradius() > thr)) {
      out.exit_code = kExitInconclusive;
      out.diagnostics.push_back("domain inradius never exceeds the threshold");
    }
  } else {
    out.payload.add("applicable", JsonValue::boolean(false));
    out.payload.add("reason",
                    JsonValue::str("threshold is defined for constant weights; "
                                   "run classify for the weighted rules"));
    out.exit_code = kExitInconclusive;
  }
  return out;
}

CommandResult run_verify(const RunConfig& cfg) {
  CommandResult out;
  const ProblemSpec spec = build_problem(cfg);
  const double r_opt = cfg.get_double_or("verify.r", 1.0);
  const double m_opt = cfg.get_double_or("verify.m", 0.5);
  const double u0_opt = cfg.get_double_or("verify.u0", 0.5);
  const double h_opt = cfg.get_double_or("verify.h", 1e-3);

  JsonValue checks = JsonValue::array();
  bool all_pass = true;
  auto add_check = [&](const std::string& name, double measured, double tol,
                       bool pass) {
    JsonValue c = JsonValue::object();
    c.add("name", JsonValue::str(name));
    c.add("measured", JsonValue::number(measured));
    c.add("tolerance", JsonValue::number(tol));
    c.add("pass", JsonValue::boolean(pass));
    checks.push(std::move(c));
    all_pass = all_pass && pass;
  };

  // pick an interior anchor point per shape
  Point x0(static_cast<std::size_t>(spec.dim), 0.0);
  switch (spec.domain.shape()) {
    case Domain::Shape::FullSpace: break;
    case Domain::Shape::Ball: break;
    case Domain::Shape::ExteriorOfBall: x0[0] = 3.0 * spec.domain.R(); break;
    case Domain::Shape::Annulus:
      x0[0] = 0.5 * (spec.domain.R1() + spec.domain.R2());
      break;
    case Domain::Shape::Cone2D: {
      const double half = 0.5 * spec.domain.theta0();
      x0[0] = 10.0 * std::cos(half);
      x0[1] = 10.0 * std::sin(half);
      break;
    }
    case Domain::Shape::CustomSampled: break;
  }
  const double d0 = spec.domain.distance_to_boundary(x0);
  const double r = std::isfinite(d0) ? std::min(r_opt, 0.9 * d0) : r_opt;

  // 1) comparison profile solves its frozen-coefficient equation
  {
    const ComparisonProfile prof(spec, x0, r, m_opt);
    const double rho = prof.frozen_rho();
    const double fm = prof.f_of_m();
    const double p = spec.p;
    auto rhs = [&](double, double gmag, const Point&) {
      return rho * fm * std::pow(gmag, p);
    };
    auto eval = [&](const Point& y) { return prof.value(y); };
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
      auto dir = num::halton(static_cast<std::size_t>(i), spec.dim);
      double dn = 0.0;
      for (double& c : dir) {
        c = 2.0 * c - 1.0;
        dn += c * c;
      }
      dn = std::sqrt(dn);
      if (dn < 1e-9) continue;
      const double rad = (0.35 + 0.3 * (i % 5) / 4.0) * r;
      Point y = x0;
      for (int k = 0; k < spec.dim; ++k)
        y[static_cast<std::size_t>(k)] += rad * dir[static_cast<std::size_t>(k)] / dn;
      const StencilResidual sr = stencil_residual(eval, y, h_opt * r, rhs);
      worst = std::max(worst, sr.relative);
    }
    add_check("comparison_profile_residual", worst, 1e-5, worst < 1e-5);
  }

  // 2) extremal ODE vs the transform route (constant weights)
  if (spec.weight.kind() == Weight::Kind::Constant) {
    try {
      const double u0 = std::min(u0_opt, spec.f.upper_limit() * 0.5);
      const ExtremalProfile prof = extremal_profile(spec, u0, r, 129);
      if (prof.closed_form_available) {
        double worst = 0.0;
        for (std::size_t i = 0; i < prof.profile.radii.size(); ++i)
          worst = std::max(worst, std::abs(prof.profile.values[i] -
                                           prof.closed_form(prof.profile.radii[i])));
        add_check("extremal_ode_vs_closed_form", worst, 1e-8, worst < 1e-8);

        // 3) the pointwise inequality holds with equality along the
        // extremal profile: ∫_{m(r)}^{u0} = alpha c^e r^kappa
        const Transforms tr(spec.f, spec.p);
        double worst_eq = 0.0;
        for (std::size_t i = 1; i + 1 < prof.profile.radii.size(); i += 16) {
          const double rr = prof.profile.radii[i];
          const double mr = prof.profile.values[i];
          if (mr <= 1e-12) continue;
          const double lhs = tr.integral_between(mr, u0);
          const double rhs = prof.alpha_scaled * std::pow(rr, prof.kappa_val);
          worst_eq = std::max(worst_eq, std::abs(lhs - rhs));
        }
        add_check("pointwise_inequality_extremal_equality", worst_eq, 1e-6,
                  worst_eq < 1e-6);
      }
    } catch (const Error& e) {
      out.diagnostics.push_back(std::string("extremal check skipped: ") + e.what());
    }

    // 4) constant-weight consistency of the two right-hand-side forms
    const double a = alpha(spec.dim, spec.p);
    const double kap = kappa(spec.p);
    const double ce = std::pow(spec.weight.constant_value(), 1.0 / (1.0 - spec.p));
    const double via_integral = a * kap * weight_integral(spec.weight, spec.p, x0, r);
    const double direct = a * ce * std::pow(r, kap);
    const double rel = std::abs(via_integral - direct) / std::max(direct, 1e-300);
    add_check("weight_integral_closed_form_consistency", rel, 1e-12, rel < 1e-12);
  }

  out.payload.add("checks", std::move(checks));
  out.payload.add("all_pass", JsonValue::boolean(all_pass));
  if (!all_pass) {
    out.exit_code = kExitInconclusive;
    out.diagnostics.push_back("at least one verification check failed");
  }
  return out;
}

CommandResult run_cone(const RunConfig& cfg) {
  CommandResult out;
  const double theta0 = cfg.get_double("cone.theta0");
  const double q = cfg.get_double("cone.q");
  try {
    const ConeSolution sol = cone_example_solve(theta0, q);
    out.payload.add("exists", JsonValue::boolean(true));
    out.payload.add("beta_q", JsonValue::number(sol.beta_q));
    out.payload.add("lambda1", JsonValue::number(sol.lambda1));
    out.payload.add("radial_exponent", JsonValue::number(sol.radial_exponent()));
    out.payload.add("initial_slope", JsonValue::number(sol.initial_slope));
    out.payload.add("boundary_defect", JsonValue::number(sol.boundary_defect));
    out.payload.add("max_value", JsonValue::number(sol.max_value));
    out.payload.add("energy", JsonValue::number(sol.energy));
    out.payload.add("symmetry_defect", JsonValue::number(sol.symmetry_defect));
    out.payload.add("bisection_iterations",
                    JsonValue::integer(sol.bisection_iterations));
    const double r_lo = cfg.get_double_or("cone.r_lo", 1.0);
    const double r_hi = cfg.get_double_or("cone.r_hi", 2.0);
    const int nr = cfg.has("cone.nr") ? cfg.get_int("cone.nr") : 48;
    const int ntheta = cfg.has("cone.ntheta") ? cfg.get_int("cone.ntheta") : 96;
    const int levels = cfg.has("cone.levels") ? cfg.get_int("cone.levels") : 3;
    const PolarResidualSummary res = cone_pde_residual(
        sol, r_lo, r_hi, 0.15 * theta0, 0.85 * theta0, nr, ntheta, levels);
    JsonValue rj = JsonValue::object();
    rj.add("max_relative", JsonValue::number(res.max_relative));
    rj.add("order", JsonValue::number(res.order));
    JsonValue lv = JsonValue::array();
    for (const auto& l : res.levels) {
      JsonValue e = JsonValue::object();
      e.add("h_r", JsonValue::number(l.h_r));
      e.add("h_theta", JsonValue::number(l.h_theta));
      e.add("max_relative", JsonValue::number(l.max_relative));
      lv.push(std::move(e));
    }
    rj.add("levels", std::move(lv));
    out.payload.add("pde_residual", std::move(rj));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ExistenceConditionFailed) throw;
    const double m = 2.0 / (1.0 - q);
    out.payload.add("exists", JsonValue::boolean(false));
    out.payload.add("beta_q", JsonValue::number(m * m));
    out.payload.add("lambda1", JsonValue::number(std::pow(M_PI / theta0, 2.0)));
    out.payload.add("reason", JsonValue::str(e.what()));
    out.exit_code = kExitInconclusive;
    out.diagnostics.push_back("existence condition beta_q < lambda1 fails");
  }
  return out;
}

}  // namespace

RunOutput run_command(const std::string& command, const std::string& config_text) {
  RunOutput out;
  RunConfig cfg;
  try {
    cfg = parse_config(command, config_text);
  } catch (const Error& e) {
    out.exit_code = kExitBadConfig;
    out.error = e.what();
    return out;
  } catch (const std::exception& e) {
    out.exit_code = kExitBadConfig;
    out.error = e.what();
    return out;
  }

  CommandResult result;
  try {
    if (command == "classify") result = run_classify(cfg);
    else if (command == "bound") result = run_bound(cfg);
    else if (command == "deadcore") result = run_deadcore(cfg);
    else if (command == "verify") result = run_verify(cfg);
    else result = run_cone(cfg);
  } catch (const Error& e) {
    out.exit_code = kExitNumericFailure;
    out.error = std::string(error_code_name(e.code())) + ": " + e.what();
    return out;
  } catch (const std::exception& e) {
    out.exit_code = kExitNumericFailure;
    out.error = e.what();
    return out;
  }

  JsonValue report = JsonValue::object();
  report.add("schema_version", JsonValue::integer(1));
  report.add("command", JsonValue::str(command));
  report.add("config", config_echo(cfg));
  report.add("result", std::move(result.payload));
  report.add("provenance", provenance_block());
  JsonValue diags = JsonValue::array();
  for (const auto& d : result.diagnostics) diags.push(JsonValue::str(d));
  report.add("diagnostics", std::move(diags));

  out.json = report.dump();
  out.csv = std::move(result.csv);
  out.svg = std::move(result.svg);
  out.exit_code = result.exit_code;
  return out;
}

}  // namespace supersol
