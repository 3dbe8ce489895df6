#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfpd {

// Invalid user-supplied parameters (bad model params, thresholds, flags).
// CLI maps this to exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Violated internal contract between layers (size mismatches and the like).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file; carries the 1-based line number of the offending line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Filesystem / stream failure. CLI maps this to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfpd
