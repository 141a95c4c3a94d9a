#pragma once

#include <stdexcept>
#include <string>

namespace arb {

// Invalid arguments or inconsistent shapes supplied by the caller.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents; message carries the path and line/offset.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical procedure failed (singular system, non-finite values).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a configured capability limit (e.g. dense solver size).
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace arb
