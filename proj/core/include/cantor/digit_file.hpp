#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "cantor/expansion.hpp"

namespace cantor {

/// Text digit file:
///   #CANTOR v1 seq=<descriptor> n=<N>[ start=<S>]
///   E_S E_{S+1} ... (N whitespace-separated decimal digits)
/// The start field is written only when S != 1.
struct DigitFile {
  BasicSequence sequence;
  Natural start{1};
  DigitString digits;

  /// Requires start == 1.
  DigitPrefix to_prefix() const;
};

void write_digit_file(std::ostream& out, const DigitPrefix& prefix);
void write_digit_file(std::ostream& out, const BasicSequence& seq, const Natural& start,
                      const DigitString& digits);
std::string digit_file_header(const BasicSequence& seq, const Natural& start, std::uint64_t n);

/// Parses and validates digit bounds against the descriptor. Throws
/// ErrorKind::parse on malformed input and ErrorKind::domain on a digit >= q_n.
DigitFile read_digit_file(std::istream& in);
DigitFile read_digit_file(const std::string& path);
void write_digit_file(const std::string& path, const DigitPrefix& prefix);

}  // namespace cantor
