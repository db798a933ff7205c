#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoinfer {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// A term, symbol or specification that is not sort-correct or well formed.
class SortError : public Error
{
 public:
  using Error::Error;
};

/// A ground evaluation that cannot be carried out (missing value, unbounded
/// quantifier, ...).
class EvaluationError : public Error
{
 public:
  using Error::Error;
};

/// Wrong use of an API, e.g. querying values before a satisfiable check.
class UsageError : public Error
{
 public:
  using Error::Error;
};

/// Failure of an external solver process or malformed solver output.
class SolverError : public Error
{
 public:
  using Error::Error;
};

/// The wall-clock budget of a solver session ran out.
class SolverTimeout : public SolverError
{
 public:
  SolverTimeout() : SolverError("timeout") {}
};

/// The brute-force oracle refused an instance that is too large.
class BudgetExceeded : public Error
{
 public:
  using Error::Error;
};

/// Error in a textual input, carrying a 1-based line and column.
class ParseError : public Error
{
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
              + message),
        d_line(line),
        d_column(column)
  {
  }

  std::size_t line() const { return d_line; }
  std::size_t column() const { return d_column; }

 private:
  std::size_t d_line;
  std::size_t d_column;
};

}  // namespace monoinfer
