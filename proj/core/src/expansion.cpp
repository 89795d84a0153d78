#include "cantor/expansion.hpp"

#include "cantor/error.hpp"

namespace cantor {

namespace {

void check_bounds(const BasicSequence& seq, const DigitString& digits) {
  const bool constant = std::holds_alternative<family::Constant>(seq.family());
  std::optional<std::uint64_t> cached;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::uint64_t n = i + 1;
    if (!digits.is_wide()) {
      const auto q = (constant && cached) ? cached : seq.q_u64(n);
      if (constant) cached = q;
      if (q) {
        if (digits.narrow()[i] >= *q) {
          throw Error(ErrorKind::domain, "digit E_" + std::to_string(n) + " = " +
                                             std::to_string(digits.narrow()[i]) +
                                             " is not below q_n = " + std::to_string(*q));
        }
        continue;
      }
    }
    const Natural q = seq.q(n);
    if (digits.value(i) >= q) {
      throw Error(ErrorKind::domain, "digit E_" + std::to_string(n) + " is not below q_n = " + q.str());
    }
  }
}

}  // namespace

DigitPrefix::DigitPrefix(BasicSequence seq, DigitString digits)
    : seq_(std::move(seq)), digits_(std::move(digits)) {
  check_bounds(seq_, digits_);
}

DigitPrefix expand_rational(const Natural& numerator, const Natural& denominator,
                            const BasicSequence& seq, std::uint64_t n) {
  if (denominator <= 0) throw Error(ErrorKind::domain, "denominator must be positive");
  if (numerator < 0 || numerator >= denominator) {
    throw Error(ErrorKind::domain, "x must lie in [0,1)");
  }
  // Remainder r_m = num / denominator, kept as an integer numerator.
  Natural num = numerator;
  DigitString digits;
  digits.reserve(n);
  for (std::uint64_t m = 1; m <= n; ++m) {
    const Natural scaled = seq.q(m) * num;
    Natural digit;
    mp::divide_qr(scaled, denominator, digit, num);
    digits.push_back(digit);
  }
  return DigitPrefix(seq, std::move(digits));
}

DigitPrefix expand_rational(const Rational& x, const BasicSequence& seq, std::uint64_t n) {
  return expand_rational(mp::numerator(x), mp::denominator(x), seq, n);
}

Rational prefix_value(const DigitPrefix& prefix) {
  // Horner from the right: E_1/q_1 + (E_2 + (...)/q_3)/(q_1 q_2) ...
  Rational value = 0;
  for (std::uint64_t n = prefix.length(); n >= 1; --n) {
    value = (value + Rational(prefix.digit(n))) / Rational(prefix.sequence().q(n));
  }
  return value;
}

std::pair<Rational, Rational> prefix_interval(const DigitPrefix& prefix) {
  Natural denominator = 1;
  for (std::uint64_t n = 1; n <= prefix.length(); ++n) denominator *= prefix.sequence().q(n);
  Rational low = prefix_value(prefix);
  Rational high = low + Rational(Natural(1), denominator);
  return {std::move(low), std::move(high)};
}

}  // namespace cantor
