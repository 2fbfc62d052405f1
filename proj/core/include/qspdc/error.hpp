#pragma once

#include <stdexcept>
#include <string>

namespace qspdc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different coefficient backends (float vs exact) or a
/// different number of variables.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

/// A point handed to an evaluator is not on the unit torus.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be special-unitary is not.
class NotUnitary : public Error {
 public:
  NotUnitary(std::size_t index, const std::string& what)
      : Error("matrix " + std::to_string(index) + " is not special-unitary: " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Dimensions of matrices, words or operator tuples do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A recursive factorization could not proceed; `step()` is 1-based.
class DecompositionError : public Error {
 public:
  DecompositionError(int step, const std::string& what)
      : Error("decomposition failed at step " + std::to_string(step) + ": " + what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// Transcribed exact data fails one of its defining identities.
class IdentityFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON document.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qspdc
