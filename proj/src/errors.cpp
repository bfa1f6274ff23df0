#include "heismin/errors.hpp"

namespace heismin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::DegenerateBranch: return "DegenerateBranch";
    case ErrorKind::DegenerateChart: return "DegenerateChart";
    case ErrorKind::MixedType: return "MixedType";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BadRotation: return "BadRotation";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace heismin
