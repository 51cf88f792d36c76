#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fg {

enum class ErrorKind {
  InvalidParameters,
  Domain,
  BranchDomain,
  NotUnimodal,
  QuadratureFailure,
  NonConvergence,
  InversionFailure,
  NonAnalytic,
  InternalInconsistency,
  Pole,
  ZeroCoefficient,
  DimensionMismatch,
  NotPositiveSemidefinite,
  Divergence,
  EigensolverFailure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `diagnostic` carries the numeric
/// evidence when there is one (achieved quadrature error, extrapolation gap,
/// bracket width, ...), NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double diagnostic = kNoDiagnostic)
      : std::runtime_error(message), kind_(kind), diagnostic_(diagnostic) {}

  ErrorKind kind() const noexcept { return kind_; }
  double diagnostic() const noexcept { return diagnostic_; }
  bool has_diagnostic() const noexcept { return diagnostic_ == diagnostic_; }

  static constexpr double kNoDiagnostic = __builtin_nan("");

 private:
  ErrorKind kind_;
  double diagnostic_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              double diagnostic = Error::kNoDiagnostic) {
  throw Error(kind, message, diagnostic);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace fg
