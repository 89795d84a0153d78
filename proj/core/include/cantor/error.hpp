#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

enum class ErrorKind {
  domain,
  invalid_horizon,
  insufficient_prefix,
  too_large,
  out_of_range,
  beyond_schedule,
  bias_unachievable,
  length_mismatch,
  parse,
  config,
  io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the counters when a block occurrence would not be fully visible.
class InsufficientPrefix : public Error {
 public:
  InsufficientPrefix(std::uint64_t required, std::uint64_t available);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t available() const noexcept { return available_; }

 private:
  std::uint64_t required_;
  std::uint64_t available_;
};

}  // namespace cantor
