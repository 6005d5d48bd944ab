#pragma once

#include <stdexcept>
#include <string>

namespace ffarith {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kFlavorMismatch,
  kDimensionMismatch,
  kInexactZero,
  kInexactZeroInverse,
  kPrecisionExhausted,
  kOverflow,
  // tmodule
  kNotNilpotent,
  kBadConstantTerm,
  kNoSuchRoot,
  kJSearchExhausted,
  kDependentBasis,
  kInseparable,
  kExtensionBudgetExceeded,
  kLiftDivergence,
  // expmap
  kSylvesterSingular,
  kExpDivergence,
  kTruncationInsufficient,
  kConstantPolynomial,
  kHypothesisFailed,
  // hensel
  kEvaluationDivergence,
  kSingularJacobian,
  kHenselConditionFailed,
  kSingularBlock,
  // counting
  kBudgetExceeded,
  kKernelEmpty,
  kInsufficientData,
};

const char* to_string(ErrorKind kind) noexcept;

/// True for errors caused by running out of a budget (precision, truncation,
/// extension degree, subdivision depth) rather than by invalid input.
bool is_budget_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind (and, for parse errors, the position).
  const std::string& message() const noexcept { return message_; }

 protected:
  Error(ErrorKind kind, const std::string& what, std::string message);

 private:
  ErrorKind kind_;
  std::string message_;
};

/// Parse failure with a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace ffarith
