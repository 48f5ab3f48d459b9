#pragma once

#include <stdexcept>
#include <string>

namespace stefan {

/// Machine-readable failure categories; the CLI maps these to exit codes.
enum class ErrorCode {
  InvalidParameter,
  Domain,
  QuadratureFailure,
  NonConvergence,
  NoRoot,
  BracketFailure,
  ShootingFailure,
  Config,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidParameterError : public Error {
 public:
  explicit InvalidParameterError(const std::string& what) : Error(ErrorCode::InvalidParameter, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& what) : Error(ErrorCode::QuadratureFailure, what) {}
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double ratio_estimate = 0.0)
      : Error(ErrorCode::NonConvergence, what), ratio_estimate_(ratio_estimate) {}
  /// Last measured contraction ratio when the iteration was abandoned.
  double ratio_estimate() const noexcept { return ratio_estimate_; }

 private:
  double ratio_estimate_;
};

class NoRootError : public Error {
 public:
  explicit NoRootError(const std::string& what) : Error(ErrorCode::NoRoot, what) {}
};

class BracketError : public Error {
 public:
  explicit BracketError(const std::string& what) : Error(ErrorCode::BracketFailure, what) {}
};

class ShootingError : public Error {
 public:
  explicit ShootingError(const std::string& what) : Error(ErrorCode::ShootingFailure, what) {}
};

}  // namespace stefan
