#pragma once

#include <stdexcept>
#include <string>

namespace ciph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NegativeCoefficient : public Error {
 public:
  using Error::Error;
};

class EmptyDirectionSet : public Error {
 public:
  EmptyDirectionSet() : Error("direction set is empty") {}
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class TrajectoryTooShort : public Error {
 public:
  using Error::Error;
};

/// Raised when gamma(x) <= 0 at an evaluated state.
class NonpositiveGamma : public Error {
 public:
  NonpositiveGamma(double gamma_value, std::string where)
      : Error("gamma(x) = " + std::to_string(gamma_value) + " is not positive" +
              (where.empty() ? std::string() : " at " + where)),
        gamma_(gamma_value) {}

  double gamma() const noexcept { return gamma_; }

 private:
  double gamma_;
};

/// Malformed input file. The message names the offending element.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ciph
