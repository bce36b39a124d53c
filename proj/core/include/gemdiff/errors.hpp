#pragma once

#include <stdexcept>
#include <string>

namespace gemdiff {

/// An operation that is only defined on interior points was given a point on
/// the boundary (a partial sum of simplex weights reaching 1, or a stick
/// coordinate equal to 0 or 1 where a division requires otherwise).
class BoundaryPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A weight vector carries too much truncated mass for the requested
/// operation (e.g. size-biased permutation with remainder > 0.01).
class MassDeficit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The parameter sequence has inf_i (a_i ∧ b_i) = 0, so no uniform
/// log-Sobolev constant exists.
class NoUniformBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monte Carlo error too large relative to the measured quantity.
class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration text failed to parse or validate. Carries the offending
/// 1-based line number (0 when the error is not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

}  // namespace gemdiff
