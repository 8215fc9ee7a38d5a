#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topfan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain of a generalized power or chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// det (b_i^j) = 0: the real parts of a basis are linearly dependent.
class SingularRealPart : public Error {
 public:
  using Error::Error;
};

/// |det (v_i^j)| != 1: the dual would not have integral v parts.
class NotUnimodular : public Error {
 public:
  using Error::Error;
};

/// Malformed fan data rejected at construction (m < n, empty complex, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class UnknownSimplex : public Error {
 public:
  using Error::Error;
};

/// An operation requiring a validated fan was handed one that fails an axiom.
class InvalidFan : public Error {
 public:
  using Error::Error;
};

class UnknownCatalogEntry : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

/// Fan-document parse failure. line/column are 1-based and 0 when unknown;
/// field is a JSON pointer into the document when the error is structural.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::string field = {})
      : Error(format(message, line, column, field)), line_(line), column_(column), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column,
                            const std::string& field) {
    std::string out = message;
    if (line != 0) out += " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
    if (!field.empty()) out += " at " + field;
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::string field_;
};

}  // namespace topfan
