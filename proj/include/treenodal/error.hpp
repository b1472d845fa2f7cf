#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treenodal {

enum class Errc {
  // tree validation
  NotConnected,
  HasCycle,
  NonPositiveWeight,
  RootDegreeNotOne,
  DuplicateEdge,
  VertexOutOfRange,
  // generation
  BadSize,
  BadWeightRange,
  // serialization
  ParseError,
  // linear algebra
  DimensionMismatch,
  NoConvergence,
  TooLarge,
  RootIsolationFailure,
  // verification
  NotASignGraph,
  IndexMismatch,
  NotSimple,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Carries the location of the offending input: a 1-based line/column for
// syntax errors, or a field path such as "edges[3][2]" for schema errors.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::string field)
      : Error(Errc::ParseError, describe(message, line, column, field)),
        line_(line),
        column_(column),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string describe(const std::string& message, std::size_t line, std::size_t column,
                              const std::string& field);

  std::size_t line_;
  std::size_t column_;
  std::string field_;
};

// Raised by decompose when an eigenvalue needs more QL sweeps than allowed.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(std::size_t index, int sweeps)
      : Error(Errc::NoConvergence, "eigenvalue " + std::to_string(index) + " did not converge after " +
                                       std::to_string(sweeps) + " QL sweeps"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace treenodal
