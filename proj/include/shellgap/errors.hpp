#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shellgap {

enum class ErrorKind {
  Domain,              // argument outside the function's domain
  InvalidSpec,         // violated ShellSpec / FluidSpec / ArrayConfig invariant
  PoleProximity,       // evaluation too close to a pole of the expression
  BesselZero,          // J_n(k xi) vanishes; the caller must shift xi
  DegenerateDenominator,
  DegenerateRadicand,
  NoGap,
  NoRootFound,
  BranchAmbiguity,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every recoverable numerical or contract failure in the library.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace shellgap
