#pragma once

#include <cstdint>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/numeric.hpp"

namespace cantor {

inline constexpr std::uint64_t default_materialization_cap = std::uint64_t{1} << 26;

/// Canonical ordering of C_{b,w}: the b^w base-b blocks of length w, each
/// exactly once, arranged so that digit 0 at odd (1-based) positions is as
/// frequent as possible relative to digit 1.
///
/// With w odd, the odd positions of slot m are the even offsets of its block
/// when m is even and the odd offsets when m is odd. Scoring a digit as
/// f(0) = 1, f(1) = -2, f(other) = 0, a block X has
///   e(X) = sum of f over even offsets,  o(X) = sum of f over odd offsets,
/// and the word's (zeros_odd - 2*ones_odd) is sum_{even slots} e + sum_{odd slots} o.
/// That is maximised by giving the even slots the ceil(b^w/2) blocks with the
/// largest g = e - o (ties broken lexicographically). Even slots take that set
/// in lexicographic order, odd slots take the remaining blocks in
/// lexicographic order. Every slot is decodable from suffix-count tables in
/// time polynomial in w and log b.
class CbwOrdering {
 public:
  CbwOrdering(std::uint64_t base, std::uint64_t width);

  std::uint64_t base() const noexcept { return base_; }
  std::uint64_t width() const noexcept { return width_; }
  const Natural& block_count() const noexcept { return block_count_; }
  Natural length() const { return block_count_ * width_; }

  /// Block occupying 0-based slot m.
  std::vector<Digit> block_at(const Natural& slot) const;
  /// Digit at 1-based position idx in [1, w*b^w].
  Digit digit_at(const Natural& idx) const;

  /// Score g of a block, as defined above.
  Integer score(const std::vector<Digit>& block) const;
  /// Maximum of zeros_odd - 2*ones_odd over every arrangement of the blocks;
  /// the canonical ordering attains it.
  Integer best_bias() const;

  /// Entire word, without any bias check. Throws too-large above `cap` digits.
  std::vector<Digit> materialize(std::uint64_t cap = default_materialization_cap) const;

  struct OddCounts {
    Natural zeros_odd;
    Natural ones_odd;
  };
  /// Exact zero/one counts at odd positions, from the count tables.
  OddCounts odd_counts() const;

 private:
  enum class Tight { below, equal, above };

  std::size_t index(std::int64_t g) const { return static_cast<std::size_t>(g + offset_); }
  int contribution(std::uint64_t r, Digit d) const;
  Natural count_suffix(std::uint64_t r, std::int64_t target) const;
  Natural count_greater(std::uint64_t r, std::int64_t target) const;
  Natural count_in_even_set(std::uint64_t r, std::int64_t prefix_score, Tight tight) const;
  std::vector<Digit> unrank(Natural rank, bool even_set) const;

  std::uint64_t base_;
  std::uint64_t width_;
  Natural block_count_;
  Natural even_slots_;
  std::int64_t offset_;
  // suffix_[r][g + offset_] = number of suffixes X_r..X_{w-1} with score g.
  std::vector<std::vector<Natural>> suffix_;
  // greater_[r][g + offset_] = number of suffixes with score above g.
  std::vector<std::vector<Natural>> greater_;
  // tight_[r][g + offset_] = number of suffixes with score g that are
  // lexicographically at most the threshold block's suffix.
  std::vector<std::vector<Natural>> tight_;
  std::vector<Natural> base_powers_;
  std::int64_t threshold_score_ = 0;
  Natural threshold_take_;
  std::vector<Digit> threshold_block_;
};

struct CbwVerification {
  bool complete = false;
  Natural zeros_odd;
  Natural ones_odd;
  bool bias_ok = false;
};

struct BiasCounts {
  Natural zeros_odd;
  Natural ones_odd;
  bool bias_ok = false;
};

/// Materialises the canonical C_{b,w}; throws bias-unachievable when no
/// arrangement has zeros_odd >= 2*ones_odd.
Block build_cbw(std::uint64_t base, std::uint64_t width,
                std::uint64_t cap = default_materialization_cap);
Digit cbw_digit_at(std::uint64_t base, std::uint64_t width, const Natural& idx);
/// Scans a word of length w*b^w.
CbwVerification verify_cbw(const Block& word, std::uint64_t base, std::uint64_t width);
/// Counts for the canonical ordering without materialising it.
BiasCounts verify_bias_analytic(std::uint64_t base, std::uint64_t width);

}  // namespace cantor
