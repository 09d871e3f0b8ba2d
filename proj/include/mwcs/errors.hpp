#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwcs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance text. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// No connected node set contains all requested roots.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle refuses instances above its node limit.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments violating its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mwcs
