#pragma once

#include <stdexcept>
#include <string>

namespace fatlin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed parameters or violated preconditions (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A builder hypothesis failed. `hypothesis()` is a short machine-readable tag.
class HypothesisError : public InvalidInput {
 public:
  HypothesisError(std::string hypothesis, const std::string& what)
      : InvalidInput(what), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// Enumeration would exceed the configured cap (CLI exit code 3).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A computed result disagrees with a proven statement (CLI exit code 1).
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace fatlin
