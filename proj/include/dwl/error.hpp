#pragma once

#include <stdexcept>
#include <string>

namespace dwl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArg : public Error {
 public:
  using Error::Error;
};

/// Raised by dini_integral when the modulus is non-Dini.
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// Raised by psi_inverse when no upper bracket can be found.
class NoBracket : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// A time step produced NaN/Inf values; the solution left the
/// representable range (blow-up passed the threshold within one step).
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

/// At least one sweep member failed to blow up within the horizon.
class IncompleteSweep : public Error {
 public:
  using Error::Error;
};

class TrajectoryTooShort : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class MissingKey : public ConfigError {
 public:
  explicit MissingKey(const std::string& key)
      : ConfigError(key, "missing required config key: " + key) {}
};

class BadValue : public ConfigError {
 public:
  BadValue(const std::string& key, const std::string& reason)
      : ConfigError(key, "bad value for " + key + ": " + reason) {}
};

class UnknownFamily : public ConfigError {
 public:
  explicit UnknownFamily(const std::string& name)
      : ConfigError("mu.family", "unknown modulus family: " + name) {}
};

}  // namespace dwl
