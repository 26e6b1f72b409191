#include "orthostiff/error.hpp"

namespace orthostiff {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::UnreachablePose: return "UnreachablePose";
    case ErrorKind::FoldedParallelogram: return "FoldedParallelogram";
    case ErrorKind::InconsistentConfiguration: return "InconsistentConfiguration";
    case ErrorKind::DegenerateStiffness: return "DegenerateStiffness";
    case ErrorKind::SerialSingularity: return "SerialSingularity";
    case ErrorKind::SingularCompliance: return "SingularCompliance";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotCompensable: return "NotCompensable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_usage_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters:
    case ErrorKind::OutOfRange:
    case ErrorKind::InvalidSpec:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
      return true;
    default:
      return false;
  }
}

}  // namespace orthostiff
