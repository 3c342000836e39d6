#pragma once

// Turns the explicit estimates into decisions: non-existence, forced
// constancy, eventual constancy in exterior domains, and forced dead cores
// with explicit regions. Every verdict carries a certificate listing the
// inequality values that justify it, so a consumer can recompute them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"

namespace supersol {

enum class Verdict {
  NoPositiveSupersolution,
  AllSupersolutionsConstant,
  EventuallyConstant,
  ConstantOutsideCollar,
  DeadCoreForced,
  BoundedSolutionsConstantOutsideCollar,
  Inconclusive,
};

const char* verdict_name(Verdict v);

struct Region {
  enum class Kind {
    Empty,
    BallRegion,        // {|x| <= a}
    ExteriorRegion,    // {|x| >= a}
    AnnulusShell,      // {a <= |x| <= b}
    DistanceAtLeast,   // {x in Omega : d_Omega(x) >= a}
    WholeDomain,
  };
  Kind kind = Kind::Empty;
  double a = 0.0;
  double b = 0.0;
  bool empty() const { return kind == Kind::Empty; }
  std::string describe() const;
};

struct Certificate {
  std::string rule;  // which estimate fired, e.g. "Prop1-p0", "Thm2ii-exterior"
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> notes;
};

struct Classification {
  Verdict verdict = Verdict::Inconclusive;
  Certificate certificate;
  std::optional<Region> region;   // dead-core region, when forced
  std::optional<double> collar;   // collar width M, when applicable
};

/// Critical boundary distance (||F||_inf / alpha_{N,p})^((1-p)/(2-p)) for
/// rho = 1; beyond it the lower bound saturates. NotApplicable when
/// ||F||_inf = inf.
double deadcore_threshold(const Nonlinearity& f, double p, int N);

/// Same threshold for a constant weight c (rescales ||F||_inf by c^(1/(1-p))).
double deadcore_threshold_scaled(const Nonlinearity& f, double p, int N, double c);

/// {x in Omega : d_Omega(x) >= threshold}, in closed form per shape.
Region deadcore_region(const Domain& dom, double threshold);

struct ExponentCheck {
  double lhs = 0.0;   // (N-2) q + (N-1) p
  double rhs = 0.0;   // N + beta
  bool holds = false; // strict inequality
  double margin = 0.0;
};

/// The Liouville exponent condition (N-2)q + (N-1)p < N + beta for the
/// q/(1-p) > 1 branch.
ExponentCheck liouville_exponent_check(int N, double p, double q, double beta);

Classification classify(const ProblemSpec& spec);

}  // namespace supersol
