#pragma once

#include <stdexcept>
#include <string>

namespace faircfs {

// Malformed or inconsistent input data (CSV rows, schema contents, BN files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid run configuration: bad flag values, unknown algorithm names.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace faircfs
