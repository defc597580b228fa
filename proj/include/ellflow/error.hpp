#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellflow {

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  DegenerateLattice,
  PoleAtLatticePoint,
  NonConvergent,
  E4Vanishes,
  PoleInC,
  OutsideFormulaDomain,
  NoConvergence,
  DerivativeVanishes,
  NotUnitVector,
  DegenerateDirection,
  DegenerateProjection,
  InfeasibleAngle,
  NegativeRadicand,
  DomainError,
  SingularPoint,
  IncompatibleConstants,
  SingularJacobian,
  BranchLost,
  EvaluationFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Process exit code used by the command-line front end for each error kind.
int exit_code(ErrorKind kind) noexcept;

/// Single exception type for the library; the kind carries the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ellflow
