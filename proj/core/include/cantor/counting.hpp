#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/expansion.hpp"
#include "cantor/numeric.hpp"
#include "cantor/report.hpp"
#include "cantor/weighting.hpp"

namespace cantor {

inline constexpr std::uint64_t default_block_enumeration_cap = 10'000'000;

/// N_n(B): overlapping occurrences of B starting at positions 1..n.
/// Requires digits.size() >= n + |B| - 1, else InsufficientPrefix.
std::uint64_t count_occurrences(const DigitString& digits, const Block& block, std::uint64_t n);
std::uint64_t count_occurrences(const DigitPrefix& prefix, const Block& block, std::uint64_t n);

/// N_{n,p}(B): occurrences starting at jk+p, j = 0..rho(n,k), k = |B|.
/// Requires digits.size() >= k*(rho(n,k)+1) + p - 1.
std::uint64_t count_strided(const DigitString& digits, const Block& block, std::uint64_t n,
                            std::uint64_t p);
std::uint64_t count_strided(const DigitPrefix& prefix, const Block& block, std::uint64_t n,
                            std::uint64_t p);

/// Overlapping count of B inside y; 0 when |B| > |y|.
std::uint64_t count_in_word(const Block& block, const Block& word);

/// Running N_c(B) at each sorted checkpoint c (single pass).
std::vector<std::uint64_t> count_at_checkpoints(const DigitString& digits, const Block& block,
                                                const std::vector<std::uint64_t>& checkpoints);

struct BlockMargin {
  std::vector<Digit> block;
  std::uint64_t count = 0;
  /// mu(B)|y|.
  Rational expected;
  /// eps - |N/(mu|y|) - 1|; negative means the block fails. mu = 0 gives
  /// eps when N = 0 and -1 otherwise.
  Rational slack;
};

struct EpsNormalResult {
  bool pass = true;
  /// Tightest block per length m = 1..k.
  std::vector<BlockMargin> tightest_by_length;
  /// Every block, when the enumeration holds at most `margin_detail_cap` blocks.
  std::vector<BlockMargin> margins;
  std::uint64_t blocks_checked = 0;
};

inline constexpr std::uint64_t margin_detail_cap = 4096;

/// (eps, k, mu)-normality of a finite word over {0..alphabet-1}: for every
/// block B of length m <= k, mu(B)|y|(1-eps) <= N(B,y) <= mu(B)|y|(1+eps).
/// Throws too-large when sum_m alphabet^m exceeds `cap`.
EpsNormalResult check_eps_k_normal(const Block& word, const Rational& eps, std::uint64_t k,
                                   const Weighting& mu, std::uint64_t alphabet,
                                   std::uint64_t cap = default_block_enumeration_cap);

/// Series "N/Q:<B>" of N_c(B)/Q_c^(k) at geometric checkpoints c <= n.
/// Every block must have length k.
StatReport normality_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                            const std::vector<Block>& blocks);

/// For m = 1..k, p = 1..m and every block over {0..alphabet-1} of length m:
/// series "strong:m=<m>,p=<p>,B=<B>" holding N_{n,p}/Q_{n,p}^(m). For m >= 2
/// also "lead:m=<m>,p=<p>,d=<d>": occurrences of digit d at starts jm+p over
/// the expected count sum_j 1/q_{jm+p}.
StatReport strong_normality_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                                   std::uint64_t alphabet,
                                   std::uint64_t cap = default_block_enumeration_cap);

/// Series "ratio:<B>/<B'>" of N_n(B)/N_n(B') for every ordered pair; the
/// value is undefined when N_n(B') = 0.
StatReport ratio_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                        const std::vector<Block>& blocks);

}  // namespace cantor
