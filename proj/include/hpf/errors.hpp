#pragma once

#include <stdexcept>
#include <string>

namespace hpf {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters, dimension mismatches, unusable option combinations.
/// The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Malformed or degenerate input data. The CLI maps these to exit code 3.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

}  // namespace hpf
