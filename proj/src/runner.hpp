#pragma once

// Command dispatch: parse a configuration, run the requested computation
// and assemble the deterministic report (JSON, plus CSV/SVG for curves).

#include <optional>
#include <string>

#include "config.hpp"

namespace supersol {

// Exit codes: 0 success, 1 inconclusive/with warnings, 2 invalid config,
// 3 internal numeric failure.
enum ExitCode : int {
  kExitOk = 0,
  kExitInconclusive = 1,
  kExitBadConfig = 2,
  kExitNumericFailure = 3,
};

struct RunOutput {
  int exit_code = kExitOk;
  std::string json;                 // empty on config errors
  std::optional<std::string> csv;   // bound command only
  std::optional<std::string> svg;   // bound command only
  std::string error;                // message for exit codes 2 and 3
};

RunOutput run_command(const std::string& command, const std::string& config_text);

}  // namespace supersol
