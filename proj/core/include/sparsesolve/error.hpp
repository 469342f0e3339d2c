#pragma once

#include <stdexcept>
#include <string>

namespace sparsesolve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer linear algebra was asked for something impossible
/// (zero matrix, non-unimodular inverse, overflow on conversion).
class LinalgError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent supports / coefficient data.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Every coefficient of some fiber polynomial cancelled.
class DegenerateFiberError : public Error {
 public:
  using Error::Error;
};

}  // namespace sparsesolve
