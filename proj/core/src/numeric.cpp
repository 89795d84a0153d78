#include <algorithm>
#include "cantor/numeric.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::invalid_horizon: return "invalid-horizon";
    case ErrorKind::insufficient_prefix: return "insufficient-prefix";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::beyond_schedule: return "beyond-schedule";
    case ErrorKind::bias_unachievable: return "bias-unachievable";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::parse: return "parse";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

InsufficientPrefix::InsufficientPrefix(std::uint64_t required, std::uint64_t available)
    : Error(ErrorKind::insufficient_prefix,
            "insufficient prefix: need " + std::to_string(required) + " digits, have " +
                std::to_string(available)),
      required_(required),
      available_(available) {}

namespace {

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Natural parse_natural(std::string_view text) {
  if (!all_digits(text)) {
    throw Error(ErrorKind::parse, "not a natural number: '" + std::string(text) + "'");
  }
  return Natural(std::string(text));
}

Integer parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '-') {
    return -parse_natural(text.substr(1));
  }
  if (!text.empty() && text.front() == '+') return parse_natural(text.substr(1));
  return parse_natural(text);
}

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Natural num = parse_natural(text.substr(0, slash));
    Natural den = parse_natural(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || (!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw Error(ErrorKind::parse, "not a decimal: '" + std::string(text) + "'");
    }
    Natural num = parse_natural(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    result = Rational(num, pow(Natural(10), frac.size()));
  } else {
    result = Rational(parse_natural(text));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  if (mp::denominator(value) == 1) return mp::numerator(value).str();
  return mp::numerator(value).str() + "/" + mp::denominator(value).str();
}

std::string to_string(const Real& value, unsigned digits) {
  if (value == 0) return "0";
  const auto magnitude = static_cast<long>(floor(log10(abs(value))).convert_to<double>());
  if (magnitude > 40 || magnitude < -40) {
    return value.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
  }
  const long decimals = std::max(0L, static_cast<long>(digits) - 1 - magnitude);
  std::string text = value.str(static_cast<std::streamsize>(decimals), std::ios_base::fixed);
  if (text.find('.') != std::string::npos) {
    text.erase(text.find_last_not_of('0') + 1);
    if (text.back() == '.') text.pop_back();
  }
  return text;
}

bool fits_u64(const Integer& value) {
  return value >= 0 && value <= std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t to_u64(const Integer& value) {
  if (!fits_u64(value)) {
    throw Error(ErrorKind::too_large, "value does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::uint64_t>();
}

std::optional<std::uint64_t> try_u64(const Integer& value) {
  if (!fits_u64(value)) return std::nullopt;
  return value.convert_to<std::uint64_t>();
}

Real to_real(const Rational& value) { return Real(value); }
Real to_real(const Integer& value) { return Real(value); }

double to_double(const Rational& value) { return Real(value).convert_to<double>(); }

Natural integer_root(const Natural& value, unsigned degree) {
  if (value < 0) throw Error(ErrorKind::domain, "root of a negative number");
  Natural out;
  mpz_root(out.backend().data(), value.backend().data(), degree);
  return out;
}

Natural pow(const Natural& base, std::uint64_t exponent) {
  Natural out;
  if (exponent > std::numeric_limits<unsigned long>::max()) {
    throw Error(ErrorKind::too_large, "exponent too large");
  }
  mpz_pow_ui(out.backend().data(), base.backend().data(), static_cast<unsigned long>(exponent));
  return out;
}

Real log10_of(const Rational& value) {
  if (value <= 0) throw Error(ErrorKind::domain, "log10 of a non-positive value");
  return log10(Real(mp::numerator(value))) - log10(Real(mp::denominator(value)));
}

}  // namespace cantor
