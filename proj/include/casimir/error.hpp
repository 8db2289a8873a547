#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Domain,       // invalid input or physically inadmissible configuration
  Convergence,  // numerical procedure did not reach tolerance
  Fit,          // curve fit failed
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

class InvalidModel : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoSurfaceMode : public DomainError {
 public:
  using DomainError::DomainError;
};

class SnapIn : public DomainError {
 public:
  using DomainError::DomainError;
};

class StepTooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

class NoCrossings : public DomainError {
 public:
  using DomainError::DomainError;
};

class ToneAmbiguity : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& what) : Error(ErrorKind::Convergence, what) {}
};

class FitFailure : public Error {
 public:
  explicit FitFailure(const std::string& what) : Error(ErrorKind::Fit, what) {}
};

}  // namespace casimir
