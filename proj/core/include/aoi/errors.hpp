#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aoi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs whose dimensions or lengths do not agree with each other.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Out-of-range generator or experiment parameter.
class ParameterError : public Error {
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

// A trace handed to the analysis does not come from the policy it claims.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Analysis requested for a user count the bound does not cover.
class ScopeError : public Error {
 public:
  using Error::Error;
};

// Exact search would exceed the configured node/sequence budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long required,
                 unsigned long long budget)
      : Error(what + " (required " + std::to_string(required) + ", budget " +
              std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  unsigned long long required() const { return required_; }
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long required_;
  unsigned long long budget_;
};

}  // namespace aoi
