#pragma once

#include <stdexcept>
#include <string>

namespace gls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, e.g. "invalid-parameter".
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-parameter"; }
};

class QuadratureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "quadrature-nonconvergence"; }
};

class UnsupportedFamily : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported-family"; }
};

class SupportTooLow : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "support-too-low"; }
};

class EmptyWindow : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "empty-intersection"; }
};

class InvalidStrategy : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-strategy"; }
};

}  // namespace gls
