#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

enum class ErrorKind {
  invalid_parameter,
  invalid_pearl,
  invalid_matrix,
  numerical_failure,
  fully_degenerate,
  empty_report,
  branch_crossing,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::invalid_pearl: return "invalid-pearl";
    case ErrorKind::invalid_matrix: return "invalid-matrix";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::fully_degenerate: return "fully-degenerate";
    case ErrorKind::empty_report: return "empty-report";
    case ErrorKind::branch_crossing: return "branch-crossing";
  }
  return "unknown";
}

}  // namespace necklace
