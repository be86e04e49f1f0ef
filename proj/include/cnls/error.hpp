#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cnls {

enum class ErrorKind {
  NonFinite,
  BlowUpDetected,
  SubstepSingular,
  PicardDiverged,
  GridMismatch,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BlowUpDetected: return "BlowUpDetected";
    case ErrorKind::SubstepSingular: return "SubstepSingular";
    case ErrorKind::PicardDiverged: return "PicardDiverged";
    case ErrorKind::GridMismatch: return "GridMismatch";
  }
  return "Unknown";
}

/// Runtime failure of a solver or evaluator. Precondition violations are
/// reported separately as std::invalid_argument.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cnls
