#pragma once

#include <stdexcept>
#include <string>

namespace flutekit {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input: schema violations, descriptors that fail
// validation, out-of-range configuration.  CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition does not hold (coincident ideal points,
// nonpositive cross-ratio, intersecting geodesics, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested computation cannot be carried further at the current
// working precision or exponent range.  CLI exit code 3.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// The input violates a hypothesis the underlying theorem requires, so the
// classifier refuses to answer rather than guess.  CLI exit code 4.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace flutekit
