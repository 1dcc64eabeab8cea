#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatrange {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DegreeZero : public Error {
 public:
  using Error::Error;
};

/// Thrown by cond1_polynomial when a_0..a_{n-2} all vanish; the equation
/// then reads 0 = sin(pi/n) and has no solutions at all.
class ConstantPolynomial : public Error {
 public:
  using Error::Error;
};

class NotAnEigenpair : public Error {
 public:
  using Error::Error;
};

class WrongDimension : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace flatrange
