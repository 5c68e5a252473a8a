#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uhtp {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed machine-description text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed text describing an invalid machine (duplicate rule,
// undeclared name, rule out of the halt state, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// No rule for the current (state, symbol) of a non-halting configuration.
class IllFormedMachine : public Error {
 public:
  using Error::Error;
};

// A parameter outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A label whose forward orbit cannot be closed into a finite cycle, so the
// principal logarithm of the step is not available on it.
class OrbitNotClosed : public Error {
 public:
  using Error::Error;
};

// Accumulated floating error exceeded the requested 2^-m certificate.
class PrecisionExceeded : public Error {
 public:
  using Error::Error;
};

// A basis list that is not closed under the orbit segments a time needs.
class BasisNotClosed : public Error {
 public:
  using Error::Error;
};

// Operation applied to a state carrying the wrong time tag.
class TimeTagError : public Error {
 public:
  using Error::Error;
};

// A corpus entry whose declared ground truth fails its own replay.
class CorpusError : public Error {
 public:
  using Error::Error;
};

class SearchRangeExhausted : public Error {
 public:
  using Error::Error;
};

// Noise margin too large for the threshold gap.
class MarginViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace uhtp
