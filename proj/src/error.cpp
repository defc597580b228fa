#include "ellflow/error.hpp"

namespace ellflow {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::PoleAtLatticePoint: return "PoleAtLatticePoint";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::E4Vanishes: return "E4Vanishes";
    case ErrorKind::PoleInC: return "PoleInC";
    case ErrorKind::OutsideFormulaDomain: return "OutsideFormulaDomain";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::NotUnitVector: return "NotUnitVector";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::DegenerateProjection: return "DegenerateProjection";
    case ErrorKind::InfeasibleAngle: return "InfeasibleAngle";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::IncompatibleConstants: return "IncompatibleConstants";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::BranchLost: return "BranchLost";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  // 1 is reserved for failed verification, 3 for eval runs with too many failed points.
  switch (kind) {
    case ErrorKind::DegenerateLattice:
    case ErrorKind::OutsideFormulaDomain: return 2;
    case ErrorKind::InvalidArgument: return 4;
    case ErrorKind::DivisionByZero: return 10;
    case ErrorKind::PoleAtLatticePoint: return 11;
    case ErrorKind::NonConvergent: return 12;
    case ErrorKind::E4Vanishes: return 13;
    case ErrorKind::PoleInC: return 14;
    case ErrorKind::NoConvergence: return 15;
    case ErrorKind::DerivativeVanishes: return 16;
    case ErrorKind::NotUnitVector: return 17;
    case ErrorKind::DegenerateDirection: return 18;
    case ErrorKind::DegenerateProjection: return 19;
    case ErrorKind::InfeasibleAngle: return 20;
    case ErrorKind::NegativeRadicand: return 21;
    case ErrorKind::DomainError: return 22;
    case ErrorKind::SingularPoint: return 23;
    case ErrorKind::IncompatibleConstants: return 24;
    case ErrorKind::SingularJacobian: return 25;
    case ErrorKind::BranchLost: return 26;
    case ErrorKind::EvaluationFailure: return 27;
  }
  return 99;
}

}  // namespace ellflow
