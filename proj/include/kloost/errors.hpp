#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kloost {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonInvertible : public Error {
 public:
  NonInvertible(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}

  // Position of the first offending element (0 for scalar inversions).
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class IntervalTooLong : public Error {
 public:
  using Error::Error;
};

class SizeOverflow : public Error {
 public:
  using Error::Error;
};

class DegenerateWindow : public Error {
 public:
  using Error::Error;
};

class QuadratureNonConvergence : public Error {
 public:
  using Error::Error;
};

class InvalidR : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class OutputIoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kloost
