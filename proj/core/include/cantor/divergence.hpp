#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cantor/numeric.hpp"
#include "cantor/report.hpp"
#include "cantor/sequences.hpp"

namespace cantor {

enum class Verdict { divergent, convergent, inconclusive };
enum class ReportKind { analytic, numeric_estimate };

std::string_view to_string(Verdict verdict);
std::string_view to_string(ReportKind kind);

struct PhaseDivergence {
  std::uint64_t p = 1;
  Real value_at_horizon;
  Verdict verdict = Verdict::inconclusive;
  /// Q_H - Q_{H/2} on the phase.
  Real tail_increment;
  /// Numeric heuristic: the tail increment fell below the threshold.
  bool bounded_estimate = false;
};

struct DivergenceReport {
  ReportKind kind = ReportKind::numeric_estimate;
  std::uint64_t k = 1;
  std::uint64_t horizon = 1;
  Real value_at_horizon;
  Verdict verdict = Verdict::inconclusive;
  Real tail_increment;
  bool bounded_estimate = false;
  std::optional<std::vector<PhaseDivergence>> per_phase;
  /// Present for convergent verdicts: Q_horizon, with
  /// Q_infinity - Q_horizon <= 10^tail_bound_log10.
  std::optional<Real> q_infinity_estimate;
  std::optional<double> tail_bound_log10;
};

struct DivergenceOptions {
  double tail_threshold = 0.05;
};

/// Analytic verdicts for closed-form families, numeric estimates otherwise.
/// Throws invalid-horizon when horizon < k.
DivergenceReport classify_divergence(const BasicSequence& seq, std::uint64_t k,
                                     std::uint64_t horizon, bool strong,
                                     const DivergenceOptions& options = {});

Json to_json(const DivergenceReport& report);

}  // namespace cantor
