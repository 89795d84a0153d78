#include "cantor/digit_file.hpp"

#include <fstream>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

void write_body(std::ostream& out, const DigitString& digits) {
  if (!digits.is_wide()) {
    const auto narrow = digits.narrow();
    for (std::size_t i = 0; i < narrow.size(); ++i) {
      if (i) out << ' ';
      out << narrow[i];
    }
  } else {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out << ' ';
      out << digits.value(i).str();
    }
  }
  out << '\n';
}

void check_bounds(const BasicSequence& seq, const Natural& start, const DigitString& digits) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const Natural n = start + i;
    const Natural q = seq.q(n);
    if (digits.value(i) >= q) {
      throw Error(ErrorKind::domain, "digit at position " + n.str() + " is not below q_n = " + q.str());
    }
  }
}

}  // namespace

DigitPrefix DigitFile::to_prefix() const {
  if (start != 1) throw Error(ErrorKind::domain, "digit file does not start at position 1");
  return DigitPrefix(sequence, digits);
}

std::string digit_file_header(const BasicSequence& seq, const Natural& start, std::uint64_t n) {
  std::string header = "#CANTOR v1 seq=" + seq.descriptor() + " n=" + std::to_string(n);
  if (start != 1) header += " start=" + start.str();
  return header;
}

void write_digit_file(std::ostream& out, const BasicSequence& seq, const Natural& start,
                      const DigitString& digits) {
  out << digit_file_header(seq, start, digits.size()) << '\n';
  write_body(out, digits);
  if (!out) throw Error(ErrorKind::io, "failed to write digit file");
}

void write_digit_file(std::ostream& out, const DigitPrefix& prefix) {
  write_digit_file(out, prefix.sequence(), Natural(1), prefix.digits());
}

void write_digit_file(const std::string& path, const DigitPrefix& prefix) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  write_digit_file(out, prefix);
}

DigitFile read_digit_file(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorKind::parse, "empty digit file");
  std::istringstream fields(header);
  std::string magic;
  std::string version;
  fields >> magic >> version;
  if (magic != "#CANTOR" || version != "v1") {
    throw Error(ErrorKind::parse, "digit file must start with '#CANTOR v1'");
  }
  std::optional<BasicSequence> seq;
  std::optional<std::uint64_t> count;
  Natural start = 1;
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::parse, "bad header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "seq") {
      seq = BasicSequence::parse(value);
    } else if (key == "n") {
      count = to_u64(parse_natural(value));
    } else if (key == "start") {
      start = parse_natural(value);
      if (start < 1) throw Error(ErrorKind::parse, "start must be >= 1");
    } else {
      throw Error(ErrorKind::parse, "unknown header field '" + key + "'");
    }
  }
  if (!seq || !count) throw Error(ErrorKind::parse, "digit file header needs seq= and n=");

  DigitString digits;
  digits.reserve(*count);
  std::string token;
  while (in >> token) {
    if (digits.size() == *count) throw Error(ErrorKind::parse, "more digits than n");
    digits.push_back(parse_natural(token));
  }
  if (digits.size() != *count) {
    throw Error(ErrorKind::parse, "expected " + std::to_string(*count) + " digits, found " +
                                      std::to_string(digits.size()));
  }
  if (start == 1) {
    DigitPrefix prefix(*seq, digits);
  } else {
    check_bounds(*seq, start, digits);
  }
  return DigitFile{*seq, start, std::move(digits)};
}

DigitFile read_digit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return read_digit_file(in);
}

}  // namespace cantor
