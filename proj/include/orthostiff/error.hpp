#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthostiff {

enum class ErrorKind {
  InvalidParameters,
  UnreachablePose,
  FoldedParallelogram,
  InconsistentConfiguration,
  DegenerateStiffness,
  SerialSingularity,
  SingularCompliance,
  OutOfRange,
  InvalidSpec,
  NotCompensable,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Errors in the parameter/usage family map to CLI exit status 1, the rest
/// (singularities, unreachable poses, ...) are numerical failures.
bool is_usage_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orthostiff
