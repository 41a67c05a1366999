#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "cspw/tuple.hpp"

namespace cspw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Input outside the supported model (non-pure values, d too large for search, ...).
class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NotPolymorphism : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  NotClosed(const std::string& what, Tuple u, Tuple v, Tuple w, Tuple image)
      : Error(what), u(std::move(u)), v(std::move(v)), w(std::move(w)), image(std::move(image)) {}
  /// The violating triple and phi applied to it coordinatewise.
  Tuple u, v, w, image;
};

class TypePartitionViolation : public Error {
 public:
  using Error::Error;
};

class TooManyParts : public Error {
 public:
  using Error::Error;
};

class QueryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cspw
