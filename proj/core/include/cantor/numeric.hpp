#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace cantor {

namespace mp = boost::multiprecision;

/// Arbitrary-precision integer. Used for radices, positions and lengths that
/// may exceed 64 bits (construction schedules reach 10^200 and beyond).
using Integer = mp::number<mp::gmp_int, mp::et_off>;
/// Alias used where the value is known to be non-negative.
using Natural = Integer;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
/// Fixed high-precision float (50 significant decimal digits).
using Real = mp::number<mp::mpfr_float_backend<50>, mp::et_off>;

inline constexpr unsigned real_digits10 = 50;

Natural parse_natural(std::string_view text);
Integer parse_integer(std::string_view text);
/// Accepts "p/q", "p", or a terminating decimal such as "0.25".
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
/// Scientific notation with `digits` significant digits; plain "0" for zero.
std::string to_string(const Real& value, unsigned digits = 30);

bool fits_u64(const Integer& value);
std::uint64_t to_u64(const Integer& value);
std::optional<std::uint64_t> try_u64(const Integer& value);

Real to_real(const Rational& value);
Real to_real(const Integer& value);
double to_double(const Rational& value);

/// Floor of the q-th root of a non-negative integer.
Natural integer_root(const Natural& value, unsigned degree);
Natural pow(const Natural& base, std::uint64_t exponent);

/// log10 of a positive rational, computed in Real precision.
Real log10_of(const Rational& value);

}  // namespace cantor
