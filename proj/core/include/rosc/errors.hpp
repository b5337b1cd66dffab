#pragma once

#include <stdexcept>
#include <string>

namespace rosc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity with an inverse-square term was evaluated at x_i = 0.
class SingularStateError : public Error {
 public:
  using Error::Error;
};

/// Degree-of-freedom index outside [0, dof).
class IndexError : public Error {
 public:
  using Error::Error;
};

/// System parameters do not match the requested closed-form case.
class CaseMismatchError : public Error {
 public:
  using Error::Error;
};

/// A symbolic expansion would exceed the configured degree limit.
class DegreeLimitError : public Error {
 public:
  using Error::Error;
};

/// The k -> 0 limit of an extracted invariant is not proportional to the
/// square of the linear-system invariant.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Analytic and finite-difference derivative paths disagree.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

/// Trajectory integration rejects negative centrifugal strengths.
class NegativeStrengthError : public Error {
 public:
  using Error::Error;
};

/// A coordinate with a centrifugal barrier fell below the safety floor.
class SingularityApproachError : public Error {
 public:
  using Error::Error;
};

/// The step controller could not meet the requested tolerance.
class StepFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace rosc
