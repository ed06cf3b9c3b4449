#pragma once

#include <stdexcept>
#include <string>

namespace reva {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad dimensions, out-of-range parameters, non-finite values.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input (carries a 1-based line number when known).
class CsvError : public Error {
 public:
  explicit CsvError(const std::string& what, long line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace reva
