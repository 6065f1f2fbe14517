#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A field carried a NaN or infinity where finite values are required.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t component, std::size_t index)
      : Error("non-finite value at component " + std::to_string(component) +
              ", grid index " + std::to_string(index)),
        component_(component),
        index_(index) {}

  std::size_t component() const { return component_; }
  std::size_t index() const { return index_; }

 private:
  std::size_t component_;
  std::size_t index_;
};

/// The time integrator produced non-finite values at time `t`.
class BlowUp : public Error {
 public:
  explicit BlowUp(double t)
      : Error("solution blew up at t = " + std::to_string(t)), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

}  // namespace fdlab
