#pragma once

#include <stdexcept>
#include <string>

namespace xover {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar parameter or argument outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A design (or collection of designs) that is structurally unusable for the
// requested operation: mismatched shapes, labels out of range, bad grouping.
class DesignError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Text input that does not follow the documented format. Line and column are
// 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace xover
