#pragma once

#include <stdexcept>
#include <string>

namespace oodsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Impossible pipe geometry, e.g. a bend whose radius does not exceed the bore radius.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates its type invariant. The message starts with the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A speed-distribution weight was zero or negative.
class NonPositiveRatio : public Error {
 public:
  using Error::Error;
};

class IncompleteLog : public Error {
 public:
  using Error::Error;
};

/// Percentage error requested against a zero reference.
class ZeroReference : public Error {
 public:
  using Error::Error;
};

/// A required orientation is absent from a set of runs.
class MissingScenario : public Error {
 public:
  using Error::Error;
};

}  // namespace oodsim
