#pragma once

#include <stdexcept>
#include <string>

namespace bruhatspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad generator index, non-reduced word, bad file, ...
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition or hypothesis does not hold for the input.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace bruhatspec
