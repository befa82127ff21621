#pragma once
#include <stdexcept>
#include <string>

namespace sba {

// Bad input data: malformed presentation file, invalid string literal, bad CLI value.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A validation step rejected the data for a mathematical reason; carries a witness.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency check failed: indicates a bug, not bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Exact integer arithmetic left the 62-bit magnitude budget.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sba
