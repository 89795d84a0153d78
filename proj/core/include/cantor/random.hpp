#pragma once

#include <array>
#include <cstdint>

#include "cantor/numeric.hpp"

namespace cantor {

/// Philox4x32-10 counter-based generator. Each (key, stream) pair addresses
/// an independent sequence, so trial i of a seeded run draws from stream i
/// regardless of which thread executes it.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  /// The bijection itself: ten rounds over `counter` under `key`.
  static Counter block(Counter counter, Key key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, bound) for arbitrary-precision bounds (bitwise rejection).
  Natural below(const Natural& bound);

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
  Counter buffer_{};
  unsigned used_ = 4;
};

}  // namespace cantor
