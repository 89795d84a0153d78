#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

using Digit = std::uint64_t;

/// Digit storage that stays on machine words until a digit exceeds 64 bits,
/// then promotes the whole string to arbitrary precision.
class DigitString {
 public:
  DigitString() = default;
  DigitString(std::initializer_list<Digit> digits) : narrow_(digits) {}
  explicit DigitString(std::vector<Digit> digits) : narrow_(std::move(digits)) {}
  explicit DigitString(std::vector<Natural> digits);

  std::size_t size() const noexcept { return wide_mode_ ? wide_.size() : narrow_.size(); }
  bool empty() const noexcept { return size() == 0; }
  bool is_wide() const noexcept { return wide_mode_; }

  /// 0-based access.
  Natural value(std::size_t index) const;
  /// Requires !is_wide().
  std::span<const Digit> narrow() const;

  void push_back(Digit digit);
  void push_back(const Natural& digit);
  void reserve(std::size_t n);

  /// True when the digit at `index` equals `other[other_index]`.
  bool equal_at(std::size_t index, const DigitString& other, std::size_t other_index) const;

  DigitString slice(std::size_t offset, std::size_t count) const;

  /// Comma-separated decimal digits.
  std::string to_string(char separator = ',') const;

  friend bool operator==(const DigitString& a, const DigitString& b);

 private:
  void promote();

  std::vector<Digit> narrow_;
  std::vector<Natural> wide_;
  bool wide_mode_ = false;
};

/// A non-empty finite tuple of non-negative integers.
class Block {
 public:
  Block(std::initializer_list<Digit> entries);
  explicit Block(DigitString entries);
  explicit Block(std::vector<Digit> entries);

  /// Parses "0,1,0". Empty input is rejected.
  static Block parse(std::string_view text);

  std::size_t length() const noexcept { return entries_.size(); }
  const DigitString& entries() const noexcept { return entries_; }
  Natural max_entry() const;
  std::string to_string() const { return entries_.to_string(','); }

  friend bool operator==(const Block& a, const Block& b) { return a.entries_ == b.entries_; }
  friend bool operator<(const Block& a, const Block& b);

 private:
  DigitString entries_;
};

}  // namespace cantor
