#pragma once

#include <stdexcept>
#include <string>

namespace vgr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its documented constraint (e.g. |beta| >= alpha).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument sits on a pole of a gamma factor or a hypergeometric parameter.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A density was requested at a point where it is infinite.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Moment order or similar index outside its admissible interval.
class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The first absolute moment of the ratio does not exist.
class UndefinedMeanError : public RangeError {
 public:
  UndefinedMeanError()
      : RangeError("mean undefined: E|Z| diverges for every parameter choice") {}
};

/// Series evaluated at a point where it diverges (e.g. 2F1 at x = 1 with c-a-b <= 0).
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or quadrature ran out of its term/subdivision budget.
/// The partial result is kept so callers can decide whether it is usable.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double partial, double err_estimate)
      : Error(what), partial_(partial), err_estimate_(err_estimate) {}

  double partial() const noexcept { return partial_; }
  double err_estimate() const noexcept { return err_estimate_; }

 private:
  double partial_;
  double err_estimate_;
};

}  // namespace vgr
