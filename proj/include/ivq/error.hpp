#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ivq {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input record. `line` is 1-based; for array-shaped inputs it is
/// the record index within the file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Bad or unloadable configuration (tokenizer files, provider specs, run config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Embedding provider failure (network, dimension mismatch, missing keys).
class ProviderError : public Error {
 public:
  using Error::Error;
};

/// Input does not satisfy a statistical precondition (empty sample,
/// zero variance, degenerate design).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivq
