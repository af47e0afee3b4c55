#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwehsd {

// Malformed or inconsistent input data: files, corpora, stores, configs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A DataError tied to a 1-based line of a text input.
class LoadError : public DataError {
 public:
  LoadError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Tensor shapes that do not fit the layer they are fed to.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mwehsd
