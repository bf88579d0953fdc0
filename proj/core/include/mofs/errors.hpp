#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace mofs {

/// Precondition on an argument was violated (bad size, out-of-range value).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A metric was requested on counts for which it is undefined (e.g. recall
/// with no positive samples).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Unrecognized class label in the raw data.
class LabelError : public std::runtime_error {
 public:
  explicit LabelError(std::string label)
      : std::runtime_error("unrecognized label '" + label + "'"),
        label_(std::move(label)) {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent experiment or algorithm configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A repeat of an experiment failed; the message names the repeat and the
/// original error.
class RunError : public std::runtime_error {
 public:
  RunError(std::size_t repeat, const std::string& what)
      : std::runtime_error("repeat " + std::to_string(repeat) + ": " + what), repeat_(repeat) {}

  std::size_t repeat() const noexcept { return repeat_; }

 private:
  std::size_t repeat_;
};

/// Broken internal contract (e.g. an empty genome reached evaluation).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mofs
