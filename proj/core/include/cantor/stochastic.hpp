#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/expansion.hpp"
#include "cantor/numeric.hpp"
#include "cantor/report.hpp"
#include "cantor/sequences.hpp"

namespace cantor {

/// E_m uniform on [0, q_m), independent, drawn from Philox stream `stream`.
DigitPrefix sample_prefix(const BasicSequence& seq, std::uint64_t n, std::uint64_t seed,
                          std::uint64_t stream = 0);

/// Exact per-start moments for starts ik+p, i = 0..rho(n,k).
struct MomentTable {
  std::uint64_t n = 0;
  std::uint64_t k = 1;
  std::uint64_t p = 1;
  std::vector<Rational> expected;  // F
  std::vector<Rational> variance;  // V = F - F^2
  Rational t;                      // t_{n,p}^(k)
  Rational q;                      // Q_{n,p}^(k) = sum F
};
MomentTable moments(const BasicSequence& seq, std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// Q_{n,p}^(k) and t_{n,p}^(k) in high precision, for long horizons.
struct MomentSums {
  Real q;
  Real t;
};
MomentSums moment_sums(const BasicSequence& seq, std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// (N_{n,p} - Q_{n,p}) / sqrt(2 t log log t) with k = |B|; absent when t <= e.
std::optional<double> lil_deviation(const DigitPrefix& prefix, const Block& block, std::uint64_t n,
                                    std::uint64_t p);

struct LilConfig {
  BasicSequence seq;
  Block block;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double c = 3.0;
  unsigned threads = 1;
  /// Adversarial control: every digit is 0 instead of sampled.
  bool inject_all_zero = false;
};

struct LilTrial {
  std::uint64_t trial = 0;
  std::uint64_t count = 0;
  double deviation = 0;  // (N - Q) / sqrt(2 t log log t), t = sum_p t_{n,p}
  bool within = false;
};

struct LilResult {
  LilConfig config;
  std::vector<LilTrial> trials;
  Real q;
  Real t;
  double bound = 0;
  double mean = 0;
  double sample_variance = 0;
  double variance_ratio = 0;
  double fraction_within = 0;
  std::vector<std::string> warnings;
};

LilResult run_lil_experiment(const LilConfig& config);

struct OmissionConfig {
  BasicSequence seq;
  std::uint64_t k = 1;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct OmissionTrial {
  std::uint64_t trial = 0;
  std::uint64_t count = 0;       // occurrences of 0^k at starts <= n-k+1
  std::uint64_t half_count = 0;  // ... at starts <= floor(n/2)-k+1
  bool omitted = false;
  bool stable = false;
};

struct OmissionResult {
  OmissionConfig config;
  std::vector<OmissionTrial> trials;
  /// prod_{j=1}^{n-k+1} (1 - 1/(q_j...q_{j+k-1})), exact.
  Rational product;
  /// Probability of no occurrence at starts in (floor(n/2)-k+1, n-k+1].
  Rational stable_prediction;
  double omission_fraction = 0;
  double stable_fraction = 0;
};

OmissionResult run_omission_experiment(const OmissionConfig& config);

Json to_json(const LilResult& result);
Json to_json(const OmissionResult& result);
void write_csv(std::ostream& out, const LilResult& result);
void write_csv(std::ostream& out, const OmissionResult& result);

}  // namespace cantor
