#pragma once

#include <stdexcept>
#include <string>

namespace polybound {

/// Coarse failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  InvalidInput,  // bad arguments, malformed files, domain violations
  NoSolution,    // physically meaningful "no answer": horizon, infinite radius, poles, folds
  Numerical,     // integrator or root finder failed to converge
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
  explicit DomainError(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

/// Pressure below the stiffness offset: no nonnegative density on this branch.
class OutOfBranchError : public Error {
 public:
  explicit OutOfBranchError(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

class HorizonApproachError : public Error {
 public:
  explicit HorizonApproachError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

/// Polytropic index n >= 5: the configuration has no finite surface.
class NoFiniteRadiusError : public Error {
 public:
  explicit NoFiniteRadiusError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

class SingularPointError : public Error {
 public:
  explicit SingularPointError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

class FoldPointError : public Error {
 public:
  explicit FoldPointError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

class InfeasibleBoundError : public Error {
 public:
  explicit InfeasibleBoundError(const std::string& what) : Error(ErrorKind::NoSolution, what) {}
};

class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class UnderdeterminedError : public Error {
 public:
  explicit UnderdeterminedError(const std::string& what) : Error(ErrorKind::InvalidInput, what) {}
};

}  // namespace polybound
