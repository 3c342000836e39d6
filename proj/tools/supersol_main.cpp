// supersol command-line front end. Talks to the shared library purely
// through the C API in supersol/supersol.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "supersol/supersol.h"

namespace {

const char* kUsage = R"(usage: supersol <command> --config <path> [--out <path>] [--csv <path>] [--svg <path>]

commands:
  classify      decide non-existence / constancy / dead-core outcomes with a
                certificate of the inequality values used
  bound         evaluate the pointwise bound over a radius grid
  deadcore      dead-core threshold and forced region for the problem
  verify        run the built-in identity checks for the configured problem
  cone-example  solve the planar sector construction for (theta0, q)

options:
  --config <path>   flat key=value configuration file (required)
  --out <path>      write the JSON report here (default: stdout)
  --csv <path>      bound only: write "r,bound" rows (17 significant digits);
                    a saturated lower bound prints the domain endpoint a_f
                    (inf for power-type nonlinearities)
  --svg <path>      bound only: write a polyline plot of the curve
  --help            this text
  --version         library version

configuration keys (problem commands):
  problem.N=3            dimension (integer >= 2)
  problem.p=0.0          gradient exponent, 0 <= p < 1
  f.family=power         power | sum_powers | max_powers | singular
  f.q=0.5                family exponent ( singular needs q > 1 )
  f.r=2.0                second exponent for sum_powers / max_powers
  weight.kind=constant   constant | radial_power (default constant)
  weight.c=1.0           constant value (default 1.0)
  weight.beta=-1.0       radial power |x|^beta
  domain.shape=ball      full_space | ball | exterior_ball | annulus | cone2d
  domain.R=10            ball / exterior_ball radius
  domain.R1=1 domain.R2=4   annulus radii
  domain.theta0=0.3927   cone2d opening angle (needs problem.N=2)
  bound.center=0,0,0     bound only: evaluation point (N numbers)
  bound.radii=1:9:9      bound only: list "a,b,c" or range "lo:hi:count"
  verify.r / verify.m / verify.u0 / verify.h   verify tuning (optional)
  cone.theta0 / cone.q   cone-example inputs
  out.json / out.csv / out.svg   default output paths (flags override)

environment:
  SUPERSOL_THREADS  caps worker parallelism (default: hardware concurrency)

exit codes: 0 ok, 1 inconclusive or with warnings, 2 invalid config,
            3 internal numeric failure
)";

bool write_file(const std::string& path, const char* data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) return false;
  os << data;
  return static_cast<bool>(os);
}

// pull "out.json=..." style defaults out of the config text
std::string config_default(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(0, k.find_first_not_of(" \t"));
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k != key) continue;
    std::string v = line.substr(eq + 1);
    v.erase(0, v.find_first_not_of(" \t"));
    v.erase(v.find_last_not_of(" \t\r") + 1);
    return v;
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fputs(kUsage, stderr);
    return 2;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    std::fputs(kUsage, stdout);
    return 0;
  }
  if (command == "--version") {
    std::printf("supersol %s\n", supersol_version());
    return 0;
  }

  std::string config_path, out_path, csv_path, svg_path;
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&](const char* name) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "supersol: %s needs a value\n", name);
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--config") config_path = next("--config");
    else if (arg == "--out") out_path = next("--out");
    else if (arg == "--csv") csv_path = next("--csv");
    else if (arg == "--svg") svg_path = next("--svg");
    else if (arg == "--help" || arg == "-h") {
      std::fputs(kUsage, stdout);
      return 0;
    } else {
      std::fprintf(stderr, "supersol: unknown option '%s'\n", arg.c_str());
      return 2;
    }
  }
  if (config_path.empty()) {
    std::fprintf(stderr, "supersol: --config is required\n");
    return 2;
  }
  std::ifstream cfg_file(config_path, std::ios::binary);
  if (!cfg_file) {
    std::fprintf(stderr, "supersol: cannot read config '%s'\n", config_path.c_str());
    return 2;
  }
  std::ostringstream buffer;
  buffer << cfg_file.rdbuf();
  const std::string config_text = buffer.str();

  if (out_path.empty()) out_path = config_default(config_text, "out.json");
  if (csv_path.empty()) csv_path = config_default(config_text, "out.csv");
  if (svg_path.empty()) svg_path = config_default(config_text, "out.svg");

  char errbuf[1024] = {0};
  supersol_report* report = nullptr;
  const supersol_status status =
      supersol_run(command.c_str(), config_text.c_str(), &report, errbuf,
                   sizeof errbuf);
  if (status == SUPERSOL_ERR_CONFIG) {
    std::fprintf(stderr, "supersol: invalid config: %s\n", errbuf);
    return 2;
  }
  if (status != SUPERSOL_OK && status != SUPERSOL_INCONCLUSIVE) {
    std::fprintf(stderr, "supersol: %s\n", errbuf[0] ? errbuf : "internal failure");
    return 3;
  }

  int rc = supersol_report_exit_code(report);
  const char* json = supersol_report_json(report);
  if (!out_path.empty()) {
    if (!write_file(out_path, json)) {
      std::fprintf(stderr, "supersol: cannot write '%s'\n", out_path.c_str());
      supersol_report_destroy(report);
      return 3;
    }
  } else {
    std::fputs(json, stdout);
  }
  if (!csv_path.empty()) {
    const char* csv = supersol_report_csv(report);
    if (!csv) {
      std::fprintf(stderr, "supersol: command '%s' produces no CSV\n",
                   command.c_str());
      supersol_report_destroy(report);
      return 2;
    }
    if (!write_file(csv_path, csv)) {
      std::fprintf(stderr, "supersol: cannot write '%s'\n", csv_path.c_str());
      supersol_report_destroy(report);
      return 3;
    }
  }
  if (!svg_path.empty()) {
    const char* svg = supersol_report_svg(report);
    if (!svg) {
      std::fprintf(stderr, "supersol: command '%s' produces no SVG\n",
                   command.c_str());
      supersol_report_destroy(report);
      return 2;
    }
    if (!write_file(svg_path, svg)) {
      std::fprintf(stderr, "supersol: cannot write '%s'\n", svg_path.c_str());
      supersol_report_destroy(report);
      return 3;
    }
  }
  supersol_report_destroy(report);
  return rc;
}
