#pragma once

#include <stdexcept>
#include <string>

namespace fuzcal {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// A profile or formula was evaluated outside its domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Index or band outside the admissible range.
class RangeError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Two particle positions coincide (or come closer than the configured gap).
class SingularConfigurationError : public Error {
public:
  SingularConfigurationError(const std::string &what, int first, int second)
      : Error(what), first_(first), second_(second) {}

  int first() const { return first_; }
  int second() const { return second_; }

private:
  int first_;
  int second_;
};

class UnsupportedRepresentationError : public Error {
public:
  using Error::Error;
};

class UnsupportedObservableError : public Error {
public:
  using Error::Error;
};

/// Requested object would not fit the dense size guard.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// Quadrature or integrator failure.
class NumericalError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace fuzcal
