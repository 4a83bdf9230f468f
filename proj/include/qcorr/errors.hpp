#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qcorr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state or matrix failed one of its construction invariants.
/// `invariant()` names it ("trace", "hermitian", "positive_semidefinite", ...).
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

class KindMismatchError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// A computed measure fell below its numerical floor.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
