#pragma once

#include <stdexcept>
#include <string>

namespace transduce {

/// A physical or mathematical precondition was violated. `parameter()` names
/// the offending input (dotted path when raised from configuration-driven
/// code, plain field name otherwise).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string parameter, const std::string& message)
      : std::domain_error(parameter + ": " + message), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Malformed or inconsistent configuration. Line/column are 1-based, 0 when
/// the error is not tied to a source location.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + message
                                    : message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace transduce
