#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vekua {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the first error.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("parse error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by elementary functions outside their domain (log 0, 1/0, ...).
/// Carries no context; the expression evaluator rethrows it as EvalError.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Domain error tagged with the printed subexpression that produced it.
class EvalError : public Error {
 public:
  EvalError(const std::string& what, std::string subexpression)
      : Error(what + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class ZeroDivisorError : public Error {
 public:
  using Error::Error;
};

/// The integrand handed to an antiderivative is not an exact gradient.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Vec(conj(F) G) vanishes: (F, G) is not a generating pair at some point.
class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

class ConditionSViolation : public Error {
 public:
  using Error::Error;
};

/// phi = k e^{-S} rho_z vanishes or is unbounded on the working domain.
class PhiDegenerateError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class NotPseudoanalyticError : public Error {
 public:
  using Error::Error;
};

/// A "solution within tolerance" precondition failed.
class ResidualCheckError : public Error {
 public:
  using Error::Error;
};

/// Branch of p^{1/2} is ambiguous or jumps on the working domain.
class BranchError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vekua
