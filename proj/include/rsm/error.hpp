#pragma once

#include <stdexcept>
#include <string>

namespace rsm {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  DivergentAtS,
  PoleAtS,
  PoleAtOne,
  PoleAtZero,
  ModulusNotDivisible,
  ArgumentNotCoprime,
  EigenDecompositionFailure,
  IllConditioned,
  RangeExceedsEigenvalueTable,
  InvalidFormCombination,
  FormTheoremMismatch,
  BudgetExceeded,
  DataFormat,
};

const char* to_string(ErrorKind kind) noexcept;

// Numeric kinds map to CLI exit code 3, the rest to 2.
bool is_numeric_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string origin, const std::string& what)
      : std::runtime_error(origin + ": " + to_string(kind) + ": " + what),
        kind_(kind),
        origin_(std::move(origin)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  ErrorKind kind_;
  std::string origin_;
};

}  // namespace rsm
