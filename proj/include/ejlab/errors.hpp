#pragma once

#include <stdexcept>
#include <string>

namespace ejlab {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different algebra models.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: unsupported kind/size combination, bad flag value,
/// or an argument outside an operation's documented domain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Element failed the idempotency check required of an event.
class NotIdempotent : public Error {
 public:
  using Error::Error;
};

/// Events expected to be orthogonal are not.
class NotOrthogonal : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of (numerically) zero probability.
class ConditionOnNull : public Error {
 public:
  using Error::Error;
};

/// Density failed the normalization check required of a state.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Element failed a positivity check.
class NotPositive : public Error {
 public:
  using Error::Error;
};

/// Matrix expected to be a projection (hermitian idempotent) is not.
class NotProjection : public Error {
 public:
  using Error::Error;
};

/// A linear solve has no admissible solution (empty nullspace, zero mass,
/// or positivity failure of the candidate).
class NoSolution : public Error {
 public:
  using Error::Error;
};

/// Numeric rank detection found no decisive singular-value gap.
class RankUnstable : public Error {
 public:
  using Error::Error;
};

/// Matrix exponential requested outside the guarded norm range.
class ExpOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace ejlab
