#pragma once

#include <stdexcept>
#include <string>

namespace supersol {

enum class ErrorCode {
  DomainError,
  NotIntegrable,
  NoPositivePrimitive,
  NotApplicable,
  InvalidRadius,
  OutsideDomain,
  GridTooCoarse,
  Blowup,
  ExistenceConditionFailed,
  ConfigError,
  NumericFailure,
};

/// Library-wide exception. The C API maps the code to a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace supersol
