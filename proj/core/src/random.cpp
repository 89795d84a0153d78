#include "cantor/random.hpp"

#include "cantor/error.hpp"

namespace cantor {

namespace {

constexpr std::uint32_t m0 = 0xD2511F53;
constexpr std::uint32_t m1 = 0xCD9E8D57;
constexpr std::uint32_t w0 = 0x9E3779B9;
constexpr std::uint32_t w1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += w0;
      key[1] += w1;
    }
    std::uint32_t hi0;
    std::uint32_t lo0;
    std::uint32_t hi1;
    std::uint32_t lo1;
    mulhilo(m0, ctr[0], hi0, lo0);
    mulhilo(m1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint32_t Philox4x32::next_u32() {
  if (used_ == 4) {
    const Counter ctr{static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32),
                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = block(ctr, key_);
    ++index_;
    used_ = 0;
  }
  return buffer_[used_++];
}

std::uint64_t Philox4x32::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t Philox4x32::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::domain, "bound must be >= 1");
  u128 m = static_cast<u128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<u128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Natural Philox4x32::below(const Natural& bound) {
  if (bound < 1) throw Error(ErrorKind::domain, "bound must be >= 1");
  if (auto small = try_u64(bound)) return Natural(below(*small));
  const std::size_t bits = mp::msb(Natural(bound - 1)) + 1;
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  while (true) {
    Natural value = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t word = next_u64();
      if (i == 0 && top_bits < 64) word &= (std::uint64_t{1} << top_bits) - 1;
      value = (value << 64) | Natural(word);
    }
    if (value < bound) return value;
  }
}

}  // namespace cantor
