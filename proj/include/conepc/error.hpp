#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conepc {

enum class ErrorKind {
  NotPositiveDefinite,
  RankDeficient,
  OutsideCone,
  NoExplicitConjugate,
  UnboundedStep,
  StepAtBoundary,
  CorrectorStalled,
  InitialStepRejected,
  IterationLimit,
  MissingInitialIterate,
  NoSamples,
  MissingOptimum,
  ParameterOutOfRange,
  WindowTooShort,
  HypothesisNotSatisfied,
  SyntaxError,
  DimensionMismatch,
  InfeasibleStart,
  UnknownExample,
};

std::string_view to_string(ErrorKind kind);

/// Typed failure; `line` is set for parse errors and is 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int line = 0);

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace conepc
