#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proxknap {

/// Input violates a domain precondition (zero weight, negative profit, ...).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance text does not follow the file grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A declared input limit (n, w_max, p_max, t) was exceeded.
class LimitError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A table or transform would exceed the configured memory/work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation contract (mixed-sign keys, oversized sets, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace proxknap
