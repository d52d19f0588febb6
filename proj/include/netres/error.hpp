#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netres {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (bad id, empty subset, k > n, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Graph invariants violated while constructing a WeightedGraph.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries the 1-based line number where parsing failed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Iterative eigensolver failed to reach the requested accuracy.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t iterations)
      : Error(what + " after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

}  // namespace netres
