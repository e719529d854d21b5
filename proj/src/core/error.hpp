#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

enum class ErrorKind {
  Domain,
  NonConvergence,
  BracketFailure,
  UnsupportedModel,
  Usage,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Raised when an adaptive procedure exhausts its budget. Carries the best
/// value reached and the error estimate that was achieved.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double best_value, double achieved_error)
      : Error(ErrorKind::NonConvergence, what), best_value_(best_value), achieved_error_(achieved_error) {}
  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_value_;
  double achieved_error_;
};

class BracketError : public Error {
 public:
  explicit BracketError(const std::string& what) : Error(ErrorKind::BracketFailure, what) {}
};

class UnsupportedModelError : public Error {
 public:
  explicit UnsupportedModelError(const std::string& what) : Error(ErrorKind::UnsupportedModel, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace fracheat
