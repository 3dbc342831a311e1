#pragma once

#include <stdexcept>
#include <string>

namespace algrowth {

/// Process exit codes used by the command-line front end. Every error class
/// below maps onto exactly one of them.
enum class ExitCode : int {
  Ok = 0,
  VerificationFailed = 1,
  Parse = 2,
  Validation = 3,
  Unsupported = 4,
  Resource = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ExitCode::Parse, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::Validation, what) {}
};

/// Operand shapes do not agree (e.g. subspaces of different ambient spaces).
class DimensionMismatch : public ValidationError {
 public:
  explicit DimensionMismatch(const std::string& what) : ValidationError(what) {}
};

/// A structural invariant of the input does not hold (d^2 != 0, a subspace
/// that is not a subcomplex, a retract that is not a retract, ...).
class InvariantViolation : public ValidationError {
 public:
  explicit InvariantViolation(const std::string& what) : ValidationError(what) {}
};

class UnsupportedInput : public Error {
 public:
  explicit UnsupportedInput(const std::string& what) : Error(ExitCode::Unsupported, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ExitCode::Resource, what) {}
};

/// A checked inequality or identity failed. Raised only by code paths that
/// must never see a counterexample (internal self-checks).
class VerificationFailure : public Error {
 public:
  explicit VerificationFailure(const std::string& what) : Error(ExitCode::VerificationFailed, what) {}
};

}  // namespace algrowth
