#pragma once

// Flat key=value run configuration ("problem.N=3", "f.family=power", ...).
// Strict: unknown keys, duplicates and invariant violations are ConfigError.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"

namespace supersol {

struct RunConfig {
  std::string command;                       // classify|bound|deadcore|verify|cone-example
  std::map<std::string, std::string> keys;   // parsed file content, sorted

  bool has(const std::string& k) const { return keys.count(k) != 0; }
  const std::string& get(const std::string& k) const;
  std::string get_or(const std::string& k, const std::string& dflt) const;
  double get_double(const std::string& k) const;
  double get_double_or(const std::string& k, double dflt) const;
  int get_int(const std::string& k) const;

  /// Canonical text form; parse(serialize(c)) == c.
  std::string serialize() const;
};

/// Parses config text for the given command, validating the key schema and
/// every numeric invariant. Throws ConfigError.
RunConfig parse_config(const std::string& command, const std::string& text);

/// Builds the problem from the problem.*, f.*, weight.* and domain.* keys.
ProblemSpec build_problem(const RunConfig& cfg);

/// bound.center as an N-vector, bound.radii as "a,b,c" or "lo:hi:count".
Point parse_center(const RunConfig& cfg, int dim);
std::vector<double> parse_radii(const RunConfig& cfg);

}  // namespace supersol
