#pragma once

#include <stdexcept>
#include <string>

namespace exflat {

enum class ErrorKind {
  InvalidArgument,
  AnchorOffCircle,
  DuplicateAnchors,
  NonpositiveWeight,
  AnchorSingularity,
  NonConvergence,
  RootNearBoundary,
  ToleranceNotMet,
  PunctureTooClose,
  OutsideStrip,
  OutsideDomain,
  DegenerateConfiguration,
  NoConvergence,
  SchemaError,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AnchorOffCircle: return "AnchorOffCircle";
    case ErrorKind::DuplicateAnchors: return "DuplicateAnchors";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::AnchorSingularity: return "AnchorSingularity";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::RootNearBoundary: return "RootNearBoundary";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::PunctureTooClose: return "PunctureTooClose";
    case ErrorKind::OutsideStrip: return "OutsideStrip";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// Errors caused by bad caller input, as opposed to numerical breakdown.
inline bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::AnchorOffCircle:
    case ErrorKind::DuplicateAnchors:
    case ErrorKind::NonpositiveWeight:
    case ErrorKind::AnchorSingularity:
    case ErrorKind::PunctureTooClose:
    case ErrorKind::OutsideStrip:
    case ErrorKind::OutsideDomain:
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::SchemaError:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace exflat
