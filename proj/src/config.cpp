#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace supersol {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw Error(ErrorCode::ConfigError, msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) bad("key '" + key + "': trailing characters in '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    bad("key '" + key + "': cannot parse number '" + v + "'");
  }
}

const std::set<std::string> kProblemKeys = {
    "problem.N", "problem.p", "f.family", "f.q",          "f.r",
    "weight.kind", "weight.c", "weight.beta", "domain.shape", "domain.R",
    "domain.R1", "domain.R2", "domain.theta0"};
const std::set<std::string> kOutputKeys = {"out.json", "out.csv", "out.svg"};

std::set<std::string> allowed_keys(const std::string& command) {
  std::set<std::string> keys = kOutputKeys;
  keys.insert("command");
  if (command == "cone-example") {
    keys.insert({"cone.theta0", "cone.q", "cone.r_lo", "cone.r_hi", "cone.nr",
                 "cone.ntheta", "cone.levels"});
    return keys;
  }
  keys.insert(kProblemKeys.begin(), kProblemKeys.end());
  if (command == "bound") keys.insert({"bound.center", "bound.radii"});
  if (command == "verify")
    keys.insert({"verify.r", "verify.m", "verify.u0", "verify.h"});
  return keys;
}

}  // namespace

const std::string& RunConfig::get(const std::string& k) const {
  const auto it = keys.find(k);
  if (it == keys.end()) bad("missing required key '" + k + "'");
  return it->second;
}

std::string RunConfig::get_or(const std::string& k, const std::string& dflt) const {
  const auto it = keys.find(k);
  return it == keys.end() ? dflt : it->second;
}

double RunConfig::get_double(const std::string& k) const {
  return to_double(k, get(k));
}

double RunConfig::get_double_or(const std::string& k, double dflt) const {
  const auto it = keys.find(k);
  return it == keys.end() ? dflt : to_double(k, it->second);
}

int RunConfig::get_int(const std::string& k) const {
  const double v = get_double(k);
  if (v != std::floor(v)) bad("key '" + k + "' must be an integer");
  return static_cast<int>(v);
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : keys) os << k << "=" << v << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& command, const std::string& text) {
  static const std::set<std::string> kCommands = {"classify", "bound", "deadcore",
                                                  "verify", "cone-example"};
  if (!kCommands.count(command)) bad("unknown command '" + command + "'");
  RunConfig cfg;
  cfg.command = command;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  const auto allowed = allowed_keys(command);
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      bad("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      bad("line " + std::to_string(lineno) + ": empty key or value");
    if (!allowed.count(key))
      bad("unknown key '" + key + "' for command '" + command + "'");
    if (cfg.keys.count(key)) bad("duplicate key '" + key + "'");
    cfg.keys[key] = value;
  }
  if (cfg.has("command") && cfg.get("command") != command)
    bad("config command '" + cfg.get("command") + "' does not match '" + command + "'");

  // validate eagerly so invalid configs fail before any work runs
  if (command == "cone-example") {
    const double theta0 = cfg.get_double("cone.theta0");
    const double q = cfg.get_double("cone.q");
    if (!(theta0 > 0.0 && theta0 < M_PI)) bad("cone.theta0 must lie in (0, pi)");
    if (!(q > 0.0 && q < 1.0)) bad("cone.q must lie in (0, 1)");
  } else {
    build_problem(cfg);
    if (command == "bound") {
      const ProblemSpec spec = build_problem(cfg);
      parse_center(cfg, spec.dim);
      parse_radii(cfg);
    }
  }
  return cfg;
}

ProblemSpec build_problem(const RunConfig& cfg) {
  ProblemSpec spec;
  spec.dim = cfg.get_int("problem.N");
  if (spec.dim < 2) bad("problem.N must be >= 2");
  spec.p = cfg.get_double("problem.p");
  if (!(spec.p >= 0.0 && spec.p < 1.0)) bad("problem.p must lie in [0, 1)");

  const std::string family = cfg.get("f.family");
  try {
    if (family == "power") {
      if (cfg.has("f.r")) bad("f.r is only valid for sum_powers/max_powers");
      spec.f = Nonlinearity::power(cfg.get_double("f.q"));
    } else if (family == "sum_powers") {
      spec.f = Nonlinearity::sum_powers(cfg.get_double("f.q"), cfg.get_double("f.r"));
    } else if (family == "max_powers") {
      spec.f = Nonlinearity::max_powers(cfg.get_double("f.q"), cfg.get_double("f.r"));
    } else if (family == "singular") {
      if (cfg.has("f.r")) bad("f.r is only valid for sum_powers/max_powers");
      spec.f = Nonlinearity::singular_one_minus_u(cfg.get_double("f.q"));
    } else {
      bad("f.family must be power, sum_powers, max_powers or singular");
    }

    const std::string wkind = cfg.get_or("weight.kind", "constant");
    if (wkind == "constant") {
      if (cfg.has("weight.beta")) bad("weight.beta needs weight.kind=radial_power");
      spec.weight = Weight::constant(cfg.get_double_or("weight.c", 1.0));
    } else if (wkind == "radial_power") {
      if (cfg.has("weight.c")) bad("weight.c needs weight.kind=constant");
      spec.weight = Weight::radial_power(cfg.get_double("weight.beta"));
    } else {
      bad("weight.kind must be constant or radial_power");
    }

    const std::string shape = cfg.get("domain.shape");
    auto reject_params = [&](std::initializer_list<const char*> bad_keys) {
      for (const char* k : bad_keys)
        if (cfg.has(k)) bad(std::string("key '") + k + "' does not apply to domain.shape=" + shape);
    };
    if (shape == "full_space") {
      reject_params({"domain.R", "domain.R1", "domain.R2", "domain.theta0"});
      spec.domain = Domain::full_space(spec.dim);
    } else if (shape == "ball") {
      reject_params({"domain.R1", "domain.R2", "domain.theta0"});
      spec.domain = Domain::ball(spec.dim, cfg.get_double("domain.R"));
    } else if (shape == "exterior_ball") {
      reject_params({"domain.R1", "domain.R2", "domain.theta0"});
      spec.domain = Domain::exterior_of_ball(spec.dim, cfg.get_double("domain.R"));
    } else if (shape == "annulus") {
      reject_params({"domain.R", "domain.theta0"});
      spec.domain =
          Domain::annulus(spec.dim, cfg.get_double("domain.R1"), cfg.get_double("domain.R2"));
    } else if (shape == "cone2d") {
      reject_params({"domain.R", "domain.R1", "domain.R2"});
      if (spec.dim != 2) bad("domain.shape=cone2d needs problem.N=2");
      spec.domain = Domain::cone2d(cfg.get_double("domain.theta0"));
    } else {
      bad("domain.shape must be full_space, ball, exterior_ball, annulus or cone2d");
    }
    spec.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    bad(std::string("invalid problem: ") + e.what());
  }
  return spec;
}

Point parse_center(const RunConfig& cfg, int dim) {
  std::string v = cfg.get("bound.center");
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream is(v);
  Point x;
  double c;
  while (is >> c) x.push_back(c);
  if (static_cast<int>(x.size()) != dim)
    bad("bound.center needs exactly " + std::to_string(dim) + " coordinates");
  return x;
}

std::vector<double> parse_radii(const RunConfig& cfg) {
  const std::string v = cfg.get("bound.radii");
  std::vector<double> radii;
  if (v.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    long count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(v);
    if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
      bad("bound.radii range must look like lo:hi:count");
    if (count < 2 || !(hi > lo)) bad("bound.radii range needs hi > lo, count >= 2");
    for (long i = 0; i < count; ++i)
      radii.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
  } else {
    std::string w = v;
    std::replace(w.begin(), w.end(), ',', ' ');
    std::istringstream is(w);
    double r;
    while (is >> r) radii.push_back(r);
  }
  if (radii.empty()) bad("bound.radii is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) bad("bound.radii entries must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      bad("bound.radii must be strictly increasing");
  }
  return radii;
}

}  // namespace supersol
