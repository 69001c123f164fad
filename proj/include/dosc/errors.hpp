#pragma once

#include <stdexcept>
#include <string>

namespace dosc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (x <= 0 for
/// log_gamma, off-lattice point, |zeta| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Model parameters violate a family invariant, or a hypergeometric
/// denominator parameter vanishes inside the summation range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Kravchuk degree beyond N.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Grid truncation could not reach the requested tail tolerance, or is too
/// coarse for the requested matrix window.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Grid function length does not match the grid.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operator needs a grid the caller did not supply (half-step grid for B, B+).
class GridError : public Error {
 public:
  using Error::Error;
};

/// Operands of a matrix identity live in different bases.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical procedure failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dosc
