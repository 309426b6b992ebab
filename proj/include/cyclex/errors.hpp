#pragma once

#include <stdexcept>
#include <string>

namespace cyclex {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class NonFiniteInput : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

class BlockCountMismatch : public Error {
public:
  using Error::Error;
};

/// Raised when a ConvexSet descriptor violates its invariants.
class InvalidSet : public Error {
public:
  using Error::Error;
};

class EllipsoidNewtonFailure : public Error {
public:
  using Error::Error;
};

class InvalidStepSize : public Error {
public:
  using Error::Error;
};

class InvalidRelaxation : public Error {
public:
  using Error::Error;
};

class TooFewSets : public Error {
public:
  using Error::Error;
};

class DegenerateInput : public Error {
public:
  using Error::Error;
};

class AntipodalAmbiguity : public Error {
public:
  using Error::Error;
};

class InvalidUnitVector : public Error {
public:
  using Error::Error;
};

class InvalidRho : public Error {
public:
  using Error::Error;
};

/// Base of the solver-specific NotConverged errors; each derived type carries
/// the partial result so callers can still inspect or emit it.
class NotConverged : public Error {
public:
  using Error::Error;
};

}  // namespace cyclex
