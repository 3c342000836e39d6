#include "classifier.hpp"

#include <cmath>
#include <sstream>

#include "numerics.hpp"

namespace supersol {

namespace {

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

constexpr double kBranchTol = 1e-12;

const char* kCorollary1Note =
    "Corollary 1 prints the dead-core radius "
    "((1-p)/(1-p-q)+(1-p)/(p+r-1))^((1-p-q)/(1-p)), omitting alpha_{N,p} and "
    "using the exponent (1-p-q)/(1-p); this certificate uses the threshold "
    "(||F||_inf/alpha_{N,p})^((1-p)/(2-p)) implied by the saturation "
    "inequality, which reproduces Corollary 2's printed formula.";

const char* kZeroPNonexistenceNote =
    "p = 0: no positive supersolution exists here; a forced flat region is "
    "incompatible with -Delta u = rho f(u) > 0.";

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NoPositiveSupersolution: return "NoPositiveSupersolution";
    case Verdict::AllSupersolutionsConstant: return "AllSupersolutionsConstant";
    case Verdict::EventuallyConstant: return "EventuallyConstant";
    case Verdict::ConstantOutsideCollar: return "ConstantOutsideCollar";
    case Verdict::DeadCoreForced: return "DeadCoreForced";
    case Verdict::BoundedSolutionsConstantOutsideCollar:
      return "BoundedSolutionsConstantOutsideCollar";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string Region::describe() const {
  switch (kind) {
    case Kind::Empty: return "empty";
    case Kind::BallRegion: return "ball of radius " + fmt(a);
    case Kind::ExteriorRegion: return "{|x| >= " + fmt(a) + "}";
    case Kind::AnnulusShell: return "{" + fmt(a) + " <= |x| <= " + fmt(b) + "}";
    case Kind::DistanceAtLeast: return "{x : d_Omega(x) >= " + fmt(a) + "}";
    case Kind::WholeDomain: return "the whole domain";
  }
  return "?";
}

double deadcore_threshold(const Nonlinearity& f, double p, int N) {
  return deadcore_threshold_scaled(f, p, N, 1.0);
}

double deadcore_threshold_scaled(const Nonlinearity& f, double p, int N, double c) {
  const Transforms tr(f, p);
  const double f_inf = tr.F_infinity();
  require(std::isfinite(f_inf), ErrorCode::NotApplicable,
          "no dead-core threshold: ||F||_inf is infinite");
  const double a = alpha(N, p);
  const double ce = std::pow(c, 1.0 / (1.0 - p));
  return std::pow(f_inf / (a * ce), (1.0 - p) / (2.0 - p));
}

Region deadcore_region(const Domain& dom, double threshold) {
  require(threshold > 0.0, ErrorCode::DomainError, "threshold must be positive");
  Region reg;
  switch (dom.shape()) {
    case Domain::Shape::Ball:
      if (dom.R() > threshold) {
        reg.kind = Region::Kind::BallRegion;
        reg.a = dom.R() - threshold;
      }
      return reg;
    case Domain::Shape::ExteriorOfBall:
      reg.kind = Region::Kind::ExteriorRegion;
      reg.a = dom.R() + threshold;
      return reg;
    case Domain::Shape::Annulus:
      if (0.5 * (dom.R2() - dom.R1()) > threshold) {
        reg.kind = Region::Kind::AnnulusShell;
        reg.a = dom.R1() + threshold;
        reg.b = dom.R2() - threshold;
      }
      return reg;
    case Domain::Shape::FullSpace:
      reg.kind = Region::Kind::WholeDomain;
      return reg;
    case Domain::Shape::Cone2D:
    case Domain::Shape::CustomSampled:
      if (dom.sup_inradius() > threshold) {
        reg.kind = Region::Kind::DistanceAtLeast;
        reg.a = threshold;
      }
      return reg;
  }
  return reg;
}

ExponentCheck liouville_exponent_check(int N, double p, double q, double beta) {
  ExponentCheck chk;
  chk.lhs = static_cast<double>(N - 2) * q + static_cast<double>(N - 1) * p;
  chk.rhs = static_cast<double>(N) + beta;
  chk.margin = chk.rhs - chk.lhs;
  chk.holds = chk.lhs < chk.rhs;
  return chk;
}

namespace {

void push_spec_values(Certificate& cert, const ProblemSpec& spec) {
  cert.values.emplace_back("N", static_cast<double>(spec.dim));
  cert.values.emplace_back("p", spec.p);
  if (spec.f.family() == Nonlinearity::Family::PowerQ)
    cert.values.emplace_back("q", spec.f.q());
  if (spec.weight.kind() == Weight::Kind::RadialPower)
    cert.values.emplace_back("beta", spec.weight.exponent());
}

// Rule A: saturation of the integrable-case bound under a constant weight.
bool try_deadcore(const ProblemSpec& spec, const Transforms& tr,
                  Classification& out) {
  if (tr.integrability() != Integrability::IntegrableAtZero) return false;
  if (!std::isfinite(tr.F_infinity())) return false;
  if (spec.weight.kind() != Weight::Kind::Constant) return false;
  const double c = spec.weight.constant_value();
  const double thr = deadcore_threshold_scaled(spec.f, spec.p, spec.dim, c);
  const double sup_d = spec.domain.sup_inradius();
  if (!(sup_d > thr)) return false;

  out.verdict = Verdict::DeadCoreForced;
  out.region = deadcore_region(spec.domain, thr);
  out.collar = thr;
  Certificate& cert = out.certificate;
  cert.rule = "Prop1-deadcore";
  push_spec_values(cert, spec);
  cert.values.emplace_back("alpha", alpha(spec.dim, spec.p));
  cert.values.emplace_back("F_infinity", tr.F_infinity());
  cert.values.emplace_back("weight_c", c);
  cert.values.emplace_back("threshold", thr);
  cert.values.emplace_back("sup_inradius", sup_d);
  if (!out.region->empty() && out.region->kind != Region::Kind::WholeDomain &&
      out.region->kind != Region::Kind::DistanceAtLeast)
    cert.values.emplace_back("region_radius", out.region->a);
  cert.notes.push_back(kCorollary1Note);
  if (spec.p == 0.0) cert.notes.push_back(kZeroPNonexistenceNote);
  if (out.region->kind == Region::Kind::WholeDomain)
    cert.notes.push_back(
        "the forced flat region is the whole domain: every positive "
        "supersolution is constant");
  return true;
}

// Rule B: pure power on the full space, q <= 1-p.
bool try_fullspace_power(const ProblemSpec& spec, Classification& out) {
  if (spec.domain.shape() != Domain::Shape::FullSpace) return false;
  if (spec.f.family() != Nonlinearity::Family::PowerQ) return false;
  if (spec.weight.kind() != Weight::Kind::Constant) return false;
  const double q = spec.f.q();
  const double one_m_p = 1.0 - spec.p;
  const bool log_branch = std::abs(q - one_m_p) < kBranchTol;
  if (!(q < one_m_p || log_branch)) return false;

  Certificate& cert = out.certificate;
  push_spec_values(cert, spec);
  cert.values.emplace_back("alpha", alpha(spec.dim, spec.p));
  cert.values.emplace_back("q_over_one_minus_p", q / one_m_p);
  if (spec.p == 0.0) {
    out.verdict = Verdict::NoPositiveSupersolution;
    cert.rule = "Prop1-p0";
    cert.notes.push_back(
        log_branch
            ? "q = 1-p with p = 0: constancy sharpens to non-existence, since "
              "a positive constant cannot satisfy -Delta u >= f(u)"
            : "the unbounded lower bound forces a flat gradient everywhere, "
              "impossible for p = 0");
  } else {
    out.verdict = Verdict::AllSupersolutionsConstant;
    cert.rule = log_branch ? "Thm2iii-fullspace" : "Thm2i-fullspace";
  }
  return true;
}

// Rule C: exterior-domain exponent conditions for pure powers.
bool try_exterior_power(const ProblemSpec& spec, Classification& out) {
  const bool exterior = spec.domain.shape() == Domain::Shape::ExteriorOfBall;
  const bool fullspace = spec.domain.shape() == Domain::Shape::FullSpace;
  if (!exterior && !fullspace) return false;
  if (spec.f.family() != Nonlinearity::Family::PowerQ) return false;
  const double q = spec.f.q();
  const double one_m_p = 1.0 - spec.p;
  const bool log_branch = std::abs(q - one_m_p) < kBranchTol;
  Certificate cert;
  push_spec_values(cert, spec);

  if (spec.weight.kind() == Weight::Kind::Constant) {
    if (q < one_m_p && !log_branch && exterior) {
      out.verdict = Verdict::EventuallyConstant;
      cert.rule = "Thm2i-exterior";
      cert.values.emplace_back("q_over_one_minus_p", q / one_m_p);
      out.certificate = cert;
      return true;
    }
    if (log_branch && exterior) {
      out.verdict = Verdict::EventuallyConstant;
      cert.rule = "Thm2iii-exterior";
      out.certificate = cert;
      return true;
    }
    if (q > one_m_p) {
      const ExponentCheck chk = liouville_exponent_check(spec.dim, spec.p, q, 0.0);
      cert.values.emplace_back("condition_lhs", chk.lhs);
      cert.values.emplace_back("condition_rhs", chk.rhs);
      if (chk.holds) {
        out.verdict = Verdict::EventuallyConstant;
        cert.rule = "Thm2ii-exterior";
        if (fullspace)
          cert.notes.push_back(
              "full space handled through its exterior restriction");
        out.certificate = cert;
        return true;
      }
      out.verdict = Verdict::Inconclusive;
      cert.rule = "none";
      cert.notes.push_back(
          chk.lhs == chk.rhs
              ? "(N-2)q + (N-1)p = N exactly: the strict exponent condition "
                "fails and nothing is claimed"
              : "(N-2)q + (N-1)p < N fails: no conclusion available");
      out.certificate = cert;
      return true;
    }
    return false;
  }

  // radial-power weight |x|^beta (exterior domains only)
  if (!exterior) return false;
  const double beta = spec.weight.exponent();
  if (q <= one_m_p + kBranchTol) {  // q/(1-p) <= 1 branch
    cert.values.emplace_back("beta_minus_p_plus_2", beta - (spec.p - 2.0));
    if (beta > spec.p - 2.0) {
      out.verdict = Verdict::EventuallyConstant;
      cert.rule = "Thm3i-exterior";
      out.certificate = cert;
      return true;
    }
    out.verdict = Verdict::Inconclusive;
    cert.rule = "none";
    cert.notes.push_back(
        beta == spec.p - 2.0
            ? "beta = p-2: only the strict inequality beta > p-2 is proved, "
              "so this boundary case stays inconclusive"
            : "beta < p-2: no conclusion available");
    out.certificate = cert;
    return true;
  }
  const ExponentCheck chk = liouville_exponent_check(spec.dim, spec.p, q, beta);
  cert.values.emplace_back("condition_lhs", chk.lhs);
  cert.values.emplace_back("condition_rhs", chk.rhs);
  if (chk.holds) {
    out.verdict = Verdict::EventuallyConstant;
    cert.rule = "Thm3ii-exterior";
    out.certificate = cert;
    return true;
  }
  out.verdict = Verdict::Inconclusive;
  cert.rule = "none";
  cert.notes.push_back("(N-2)q + (N-1)p < N + beta fails: no conclusion available");
  out.certificate = cert;
  return true;
}

// Rule D: weighted saturation witness on an unbounded-inradius domain.
bool try_weighted_collar(const ProblemSpec& spec, const Transforms& tr,
                         Classification& out) {
  if (tr.integrability() != Integrability::IntegrableAtZero) return false;
  if (!std::isfinite(tr.F_infinity())) return false;
  if (spec.weight.kind() != Weight::Kind::RadialPower) return false;
  if (!std::isinf(spec.domain.sup_inradius())) return false;
  if (spec.domain.shape() != Domain::Shape::ExteriorOfBall) return false;

  const double R = spec.domain.R();
  const double f_inf = tr.F_infinity();
  Point x(static_cast<std::size_t>(spec.dim), 0.0);
  for (int k = 1; k <= 48; ++k) {
    const double rx = R * (1.0 + std::pow(2.0, 0.5 * k));
    x[0] = rx;
    const double r = (rx - R) * (1.0 - 1e-9);
    double arg;
    try {
      arg = bound_argument(spec, x, r);
    } catch (const Error&) {
      continue;
    }
    if (arg > f_inf) {
      Certificate& cert = out.certificate;
      push_spec_values(cert, spec);
      cert.values.emplace_back("alpha", alpha(spec.dim, spec.p));
      cert.values.emplace_back("F_infinity", f_inf);
      cert.values.emplace_back("witness_norm", rx);
      cert.values.emplace_back("witness_radius", r);
      cert.values.emplace_back("witness_argument", arg);
      if (spec.p == 0.0) {
        out.verdict = Verdict::NoPositiveSupersolution;
        cert.rule = "Prop1-p0";
        cert.notes.push_back(kZeroPNonexistenceNote);
      } else {
        out.verdict = Verdict::ConstantOutsideCollar;
        out.collar = rx - R;
        cert.rule = "Prop1-collar";
        cert.values.emplace_back("collar_M", rx - R);
        cert.notes.push_back(
            "collar width is a sampled witness depth: the saturation argument "
            "exceeds ||F||_inf at this distance from the boundary");
      }
      return true;
    }
  }
  return false;
}

// Rule E: bounded-solution collar for subcritical powers on other
// unbounded-inradius domains.
bool try_bounded_collar(const ProblemSpec& spec, Classification& out) {
  if (spec.f.family() != Nonlinearity::Family::PowerQ) return false;
  if (spec.weight.kind() != Weight::Kind::Constant) return false;
  const double q = spec.f.q();
  const double one_m_p = 1.0 - spec.p;
  if (!(q < one_m_p - kBranchTol)) return false;
  if (!std::isinf(spec.domain.sup_inradius())) return false;

  const Transforms tr(spec.f, spec.p);
  const double a = alpha(spec.dim, spec.p);
  const double ce = std::pow(spec.weight.constant_value(), 1.0 / one_m_p);
  // d-threshold where the pointwise lower bound reaches the reference
  // bound B = 1: alpha c^e M^kappa = F(1)
  const double M = std::pow(tr.F(1.0) / (a * ce), 1.0 / kappa(spec.p));
  const double coeff =
      std::pow(a * ce * (one_m_p - q) / one_m_p, one_m_p / (one_m_p - q));

  out.verdict = Verdict::BoundedSolutionsConstantOutsideCollar;
  out.collar = M;
  Certificate& cert = out.certificate;
  cert.rule = "Thm2i-bounded-collar";
  push_spec_values(cert, spec);
  cert.values.emplace_back("alpha", a);
  cert.values.emplace_back("coefficient", coeff);
  cert.values.emplace_back("exponent", (2.0 - spec.p) / (one_m_p - q));
  cert.values.emplace_back("reference_bound", 1.0);
  cert.values.emplace_back("collar_M", M);
  cert.notes.push_back(
      "conditional on boundedness: a solution with sup u = B is constant at "
      "depth d_Omega > (B/coefficient)^((1-p-q)/(2-p)); collar_M is the "
      "B = 1 value. Unbounded solutions exist (cone construction), so the "
      "boundedness assumption cannot be dropped.");
  return true;
}

}  // namespace

Classification classify(const ProblemSpec& spec) {
  spec.validate();
  const Transforms tr(spec.f, spec.p);
  Classification out;

  if (try_deadcore(spec, tr, out)) return out;
  if (try_fullspace_power(spec, out)) return out;
  if (try_exterior_power(spec, out)) return out;
  if (try_weighted_collar(spec, tr, out)) return out;
  if (try_bounded_collar(spec, out)) return out;

  out.verdict = Verdict::Inconclusive;
  out.certificate.rule = "none";
  push_spec_values(out.certificate, spec);
  out.certificate.notes.push_back("no estimate applies to this configuration");
  return out;
}

}  // namespace supersol
