#pragma once

#include <stdexcept>
#include <string>

namespace sdr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SemanticError : public Error {
 public:
  using Error::Error;
};

// An action violates the consistency requirements on its effects.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class UnsafeAction : public Error {
 public:
  using Error::Error;
};

class ImpossibleObservation : public Error {
 public:
  using Error::Error;
};

// The set of possible initial states became empty.
class InconsistentBelief : public Error {
 public:
  using Error::Error;
};

class SimulatorFault : public Error {
 public:
  using Error::Error;
};

class ExternalPlannerError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace sdr
