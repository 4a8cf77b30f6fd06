#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpure {

// Operands from different rings, malformed arguments.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Mathematically undefined requests: inverse of zero, colon by the zero
// ideal, a point that is not on the scheme.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Configured limits were hit (degree, basis size, lattice budget, exponent
// overflow).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed, e.g. the engine disagrees with an
// oracle.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input-language errors. Syntax errors carry a position; semantic errors
// (unknown names, non-prime characteristic) may too.
class InputError : public std::runtime_error {
 public:
  enum class Kind { syntax, semantic };

  InputError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(format(kind, line, column, message)),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(Kind kind, std::size_t line, std::size_t column,
                            const std::string& message) {
    std::string out = kind == Kind::syntax ? "syntax error" : "semantic error";
    if (line > 0) out += " at " + std::to_string(line) + ":" + std::to_string(column);
    return out + ": " + message;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fpure
