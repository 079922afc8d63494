#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathdecomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class OracleBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PackingFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pathdecomp
