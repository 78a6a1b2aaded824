#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixedsimplex {

/// Domain error categories. The CLI prints `name(kind)` on stderr.
enum class ErrorKind {
  InvalidArgument,
  InvalidPoint,
  DegeneratePoint,
  KTooLarge,
  BadSpec,
  BoundaryEvaluation,
  NoDensityForm,
  InvalidDistribution,
  InsufficientSamples,
  Overflow,
  BadJoint,
  AlphabetMismatch,
  NotDeterminizable,
  NotTrim,
  DivergentWeights,
  TooManyProjections,
  ParseError,
};

std::string_view name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mixedsimplex
