#include "ffarith/error.hpp"

namespace ffarith {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kFlavorMismatch: return "FlavorMismatch";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInexactZero: return "InexactZero";
    case ErrorKind::kInexactZeroInverse: return "InexactZeroInverse";
    case ErrorKind::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::kOverflow: return "Overflow";
    case ErrorKind::kNotNilpotent: return "NotNilpotent";
    case ErrorKind::kBadConstantTerm: return "BadConstantTerm";
    case ErrorKind::kNoSuchRoot: return "NoSuchRoot";
    case ErrorKind::kJSearchExhausted: return "JSearchExhausted";
    case ErrorKind::kDependentBasis: return "DependentBasis";
    case ErrorKind::kInseparable: return "Inseparable";
    case ErrorKind::kExtensionBudgetExceeded: return "ExtensionBudgetExceeded";
    case ErrorKind::kLiftDivergence: return "LiftDivergence";
    case ErrorKind::kSylvesterSingular: return "SylvesterSingular";
    case ErrorKind::kExpDivergence: return "ExpDivergence";
    case ErrorKind::kTruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::kConstantPolynomial: return "ConstantPolynomial";
    case ErrorKind::kHypothesisFailed: return "HypothesisFailed";
    case ErrorKind::kEvaluationDivergence: return "EvaluationDivergence";
    case ErrorKind::kSingularJacobian: return "SingularJacobian";
    case ErrorKind::kHenselConditionFailed: return "HenselConditionFailed";
    case ErrorKind::kSingularBlock: return "SingularBlock";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kKernelEmpty: return "KernelEmpty";
    case ErrorKind::kInsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

bool is_budget_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kPrecisionExhausted:
    case ErrorKind::kExtensionBudgetExceeded:
    case ErrorKind::kLiftDivergence:
    case ErrorKind::kExpDivergence:
    case ErrorKind::kTruncationInsufficient:
    case ErrorKind::kEvaluationDivergence:
    case ErrorKind::kHenselConditionFailed:
    case ErrorKind::kBudgetExceeded:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

Error::Error(ErrorKind kind, const std::string& what, std::string message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(std::move(message)) {}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::kParse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message, message),
      line_(line),
      column_(column) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ffarith
