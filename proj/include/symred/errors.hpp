#pragma once

#include <stdexcept>
#include <string>

namespace symred {

/// Input rejected by a precondition check (bad shape, non-Hermitian, zero vector, unknown name).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tangent vector that is not of the form -i[A, rho] for any Hermitian A.
class NotInImage : public std::runtime_error {
 public:
  NotInImage(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

enum class ReductionFailure { NotPrincipal, OnWall, NotWeylNormalized };

inline const char* to_string(ReductionFailure f) {
  switch (f) {
    case ReductionFailure::NotPrincipal: return "NOT_PRINCIPAL";
    case ReductionFailure::OnWall: return "ON_WALL";
    case ReductionFailure::NotWeylNormalized: return "NOT_WEYL_NORMALIZED";
  }
  return "UNKNOWN";
}

/// The point does not satisfy the mathematical preconditions of the local model.
class ReductionError : public std::runtime_error {
 public:
  ReductionError(ReductionFailure kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  ReductionFailure kind() const noexcept { return kind_; }

 private:
  ReductionFailure kind_;
};

}  // namespace symred
