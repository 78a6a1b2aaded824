#include "mixedsimplex/error.hpp"

namespace mixedsimplex {

std::string_view name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BoundaryEvaluation: return "BoundaryEvaluation";
    case ErrorKind::NoDensityForm: return "NoDensityForm";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::BadJoint: return "BadJoint";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::NotDeterminizable: return "NotDeterminizable";
    case ErrorKind::NotTrim: return "NotTrim";
    case ErrorKind::DivergentWeights: return "DivergentWeights";
    case ErrorKind::TooManyProjections: return "TooManyProjections";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace mixedsimplex
