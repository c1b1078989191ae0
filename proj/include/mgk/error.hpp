#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgk {

// Every failure the library reports carries one of these kinds. The CLI maps
// kinds onto exit codes, so new kinds must be added to cli.cpp as well.
enum class ErrorKind {
  DimensionMismatch,
  InsufficientData,
  DegenerateColumn,
  Infeasible,
  InternalError,
  EmptyInput,
  TieAtRankS,
  InvalidSparsity,
  TooLarge,
  InvalidPattern,
  InvalidPerturbation,
  NotPositiveDefinite,
  InvalidConfig,
  DataFormat,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by clime when a column LP has no feasible point.
class InfeasibleError : public Error {
 public:
  InfeasibleError(int column, const std::string& message)
      : Error(ErrorKind::Infeasible, message), column_(column) {}

  /// 1-based column index of the failing solve.
  int column() const { return column_; }

 private:
  int column_;
};

class DegenerateColumnError : public Error {
 public:
  DegenerateColumnError(int column, const std::string& message)
      : Error(ErrorKind::DegenerateColumn, message), column_(column) {}

  /// 1-based index of the zero-variance column.
  int column() const { return column_; }

 private:
  int column_;
};

class TieAtRankSError : public Error {
 public:
  TieAtRankSError(std::vector<std::pair<int, int>> tied,
                  const std::string& message)
      : Error(ErrorKind::TieAtRankS, message), tied_(std::move(tied)) {}

  /// Tied pairs, 1-based, sorted lexicographically.
  const std::vector<std::pair<int, int>>& tied_pairs() const { return tied_; }

 private:
  std::vector<std::pair<int, int>> tied_;
};

}  // namespace mgk
