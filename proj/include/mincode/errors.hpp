#pragma once

#include <stdexcept>
#include <string>

namespace mincode {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `locus` names the line or field at fault.
class ParseError : public Error {
 public:
  ParseError(std::string locus, const std::string& message)
      : Error(locus + ": " + message), locus_(std::move(locus)) {}
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string locus_;
};

/// Well-formed input that violates a model rule. `entity` is the offending
/// node, edge or receiver identifier.
class ValidationError : public Error {
 public:
  ValidationError(std::string entity, const std::string& message)
      : Error(message), entity_(std::move(entity)) {}
  const std::string& entity() const noexcept { return entity_; }

 private:
  std::string entity_;
};

class InfeasibleRateError : public Error {
 public:
  using Error::Error;
};

class NonIntegralError : public Error {
 public:
  using Error::Error;
};

class ConservationError : public Error {
 public:
  using Error::Error;
};

/// Objective or option combination the program builder cannot express.
class ProgramError : public Error {
 public:
  using Error::Error;
};

/// Branch-and-bound ran out of its node budget before proving optimality.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class DegreeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Raised when a structure assumed by the code construction does not hold,
/// e.g. a gadget cycle that leaves its host node.
class ModelViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mincode
