#pragma once

#include <stdexcept>

namespace cacti {

// Bad shapes, parameters, or configuration. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Missing or inconsistent input data. CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cacti
