#include "cantor/digits.hpp"

#include <algorithm>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

DigitString::DigitString(std::vector<Natural> digits) {
  narrow_.reserve(digits.size());
  for (const auto& d : digits) push_back(d);
}

Natural DigitString::value(std::size_t index) const {
  return wide_mode_ ? wide_.at(index) : Natural(narrow_.at(index));
}

std::span<const Digit> DigitString::narrow() const {
  if (wide_mode_) throw Error(ErrorKind::too_large, "digit string holds digits above 64 bits");
  return narrow_;
}

void DigitString::push_back(Digit digit) {
  if (wide_mode_) {
    wide_.emplace_back(digit);
  } else {
    narrow_.push_back(digit);
  }
}

void DigitString::push_back(const Natural& digit) {
  if (digit < 0) throw Error(ErrorKind::domain, "negative digit");
  if (!wide_mode_) {
    if (auto small = try_u64(digit)) {
      narrow_.push_back(*small);
      return;
    }
    promote();
  }
  wide_.push_back(digit);
}

void DigitString::reserve(std::size_t n) {
  if (wide_mode_) {
    wide_.reserve(n);
  } else {
    narrow_.reserve(n);
  }
}

void DigitString::promote() {
  wide_.reserve(narrow_.capacity());
  for (Digit d : narrow_) wide_.emplace_back(d);
  narrow_.clear();
  narrow_.shrink_to_fit();
  wide_mode_ = true;
}

bool DigitString::equal_at(std::size_t index, const DigitString& other,
                           std::size_t other_index) const {
  if (!wide_mode_ && !other.wide_mode_) return narrow_[index] == other.narrow_[other_index];
  return value(index) == other.value(other_index);
}

DigitString DigitString::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > size()) throw Error(ErrorKind::out_of_range, "slice beyond digit string");
  if (!wide_mode_) {
    return DigitString(std::vector<Digit>(narrow_.begin() + static_cast<std::ptrdiff_t>(offset),
                                          narrow_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
  }
  return DigitString(std::vector<Natural>(wide_.begin() + static_cast<std::ptrdiff_t>(offset),
                                          wide_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

std::string DigitString::to_string(char separator) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out << separator;
    if (wide_mode_) {
      out << wide_[i].str();
    } else {
      out << narrow_[i];
    }
  }
  return out.str();
}

bool operator==(const DigitString& a, const DigitString& b) {
  if (a.size() != b.size()) return false;
  if (!a.wide_mode_ && !b.wide_mode_) return a.narrow_ == b.narrow_;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.value(i) != b.value(i)) return false;
  }
  return true;
}

Block::Block(std::initializer_list<Digit> entries) : Block(DigitString(entries)) {}

Block::Block(std::vector<Digit> entries) : Block(DigitString(std::move(entries))) {}

Block::Block(DigitString entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::domain, "a block must have length >= 1");
}

Block Block::parse(std::string_view text) {
  DigitString digits;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    digits.push_back(parse_natural(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Block(std::move(digits));
}

Natural Block::max_entry() const {
  Natural best = entries_.value(0);
  for (std::size_t i = 1; i < entries_.size(); ++i) best = std::max(best, entries_.value(i));
  return best;
}

bool operator<(const Block& a, const Block& b) {
  const auto n = std::min(a.length(), b.length());
  for (std::size_t i = 0; i < n; ++i) {
    auto x = a.entries_.value(i);
    auto y = b.entries_.value(i);
    if (x != y) return x < y;
  }
  return a.length() < b.length();
}

}  // namespace cantor
