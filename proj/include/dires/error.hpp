#pragma once

#include <stdexcept>
#include <string>

namespace dires {

// Invalid arguments to an operation (precondition violations).
class param_error : public std::invalid_argument {
 public:
  explicit param_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file; message carries the offending line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace dires
