#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dawn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an algorithm is paired with a graph it cannot handle, e.g.
// Dijkstra on negative weights.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace dawn
