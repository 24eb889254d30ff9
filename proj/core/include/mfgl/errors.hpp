#pragma once

#include <stdexcept>
#include <string>

namespace mfgl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& where, int expected, int actual)
      : Error(where + ": dimension mismatch (expected " + std::to_string(expected) +
              ", got " + std::to_string(actual) + ")") {}
};

/// An enumeration or transport routine was asked to exceed its configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& cap_name, long long cap, long long requested)
      : Error(cap_name + " cap exceeded: requested " + std::to_string(requested) +
              ", cap is " + std::to_string(cap)),
        cap_name_(cap_name),
        cap_(cap),
        requested_(requested) {}

  const std::string& cap_name() const noexcept { return cap_name_; }
  long long cap() const noexcept { return cap_; }
  long long requested() const noexcept { return requested_; }

 private:
  std::string cap_name_;
  long long cap_;
  long long requested_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfgl
