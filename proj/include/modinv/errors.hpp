#pragma once

#include <stdexcept>
#include <string>

namespace modinv {

// Base of every error the library throws. code() is a stable, machine-readable
// token used by the CLI in its error line.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept = 0;
};

// Arguments outside an operation's domain (level < 2, out-of-range Kac label,
// dimension mismatch).
class DomainError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_DOMAIN"; }
};

// A structural relation that must hold by construction was violated.
class ConsistencyError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_CONSISTENCY"; }
};

class FusionIntegralityError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_FUSION_INTEGRALITY"; }
};

// The null space of the commutant system could not be separated cleanly from
// the rest of the spectrum.
class NumericalInstabilityError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_NUMERICAL"; }
};

// The enumeration estimate exceeded the configured node budget.
class ResourceError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_RESOURCE"; }
};

class ClassificationError : public Error {
public:
  using Error::Error;
  const char* code() const noexcept override { return "E_CLASSIFICATION"; }
};

// Malformed input. line/column are 1-based; 0 means "not attributable to a
// position" (schema errors rather than syntax errors).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  const char* code() const noexcept override { return "E_PARSE"; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace modinv
