#include "conepc/error.hpp"

namespace conepc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::NoExplicitConjugate: return "NoExplicitConjugate";
    case ErrorKind::UnboundedStep: return "UnboundedStep";
    case ErrorKind::StepAtBoundary: return "StepAtBoundary";
    case ErrorKind::CorrectorStalled: return "CorrectorStalled";
    case ErrorKind::InitialStepRejected: return "InitialStepRejected";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::MissingInitialIterate: return "MissingInitialIterate";
    case ErrorKind::NoSamples: return "NoSamples";
    case ErrorKind::MissingOptimum: return "MissingOptimum";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::HypothesisNotSatisfied: return "HypothesisNotSatisfied";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::UnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

static std::string decorate(ErrorKind kind, const std::string& what, int line) {
  std::string out(to_string(kind));
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  if (!what.empty()) out += ": " + what;
  return out;
}

Error::Error(ErrorKind kind, const std::string& what, int line)
    : std::runtime_error(decorate(kind, what, line)), kind_(kind), line_(line) {}

}  // namespace conepc
