#pragma once

#include <cstdint>
#include <utility>

#include "cantor/digits.hpp"
#include "cantor/numeric.hpp"
#include "cantor/sequences.hpp"

namespace cantor {

/// Digits E_1..E_N of a Q-Cantor expansion, bound to its basic sequence.
/// Digits beyond N are unknown. Construction checks 0 <= E_n < q_n.
class DigitPrefix {
 public:
  DigitPrefix(BasicSequence seq, DigitString digits);

  const BasicSequence& sequence() const noexcept { return seq_; }
  const DigitString& digits() const noexcept { return digits_; }
  std::uint64_t length() const noexcept { return digits_.size(); }
  /// 1-based E_n.
  Natural digit(std::uint64_t n) const { return digits_.value(n - 1); }

 private:
  BasicSequence seq_;
  DigitString digits_;
};

/// Greedy exact expansion of numerator/denominator in [0,1) to n digits.
DigitPrefix expand_rational(const Natural& numerator, const Natural& denominator,
                            const BasicSequence& seq, std::uint64_t n);
DigitPrefix expand_rational(const Rational& x, const BasicSequence& seq, std::uint64_t n);

/// sum_{n<=N} E_n / (q_1 ... q_n).
Rational prefix_value(const DigitPrefix& prefix);

/// [value, value + 1/(q_1...q_N)): every real with this prefix lies inside.
std::pair<Rational, Rational> prefix_interval(const DigitPrefix& prefix);

}  // namespace cantor
