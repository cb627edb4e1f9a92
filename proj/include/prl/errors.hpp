#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent inputs, e.g. preferences over different label spaces.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Problem too large for an exact (enumerative) method.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace prl
