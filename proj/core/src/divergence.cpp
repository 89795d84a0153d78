#include "cantor/divergence.hpp"

#include <cmath>

#include "cantor/error.hpp"

namespace cantor {

namespace {

struct Analytic {
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> tail_bound_log10;
};

double log10d(const Natural& v) { return log10_of(Rational(v)).convert_to<double>(); }

/// nullopt when no closed-form verdict exists for the family.
std::optional<Analytic> analytic_verdict(const BasicSequence& seq, std::uint64_t k,
                                         std::uint64_t horizon) {
  const Family& fam = seq.family();
  const double h = static_cast<double>(horizon);
  if (const auto* f = std::get_if<family::List>(&fam)) return analytic_verdict(*f->tail, k, horizon);
  if (std::holds_alternative<family::Constant>(fam) ||
      std::holds_alternative<family::Construction>(fam)) {
    return Analytic{Verdict::divergent, std::nullopt};
  }
  if (const auto* f = std::get_if<family::Affine>(&fam)) {
    if (f->slope == 0 || k == 1) return Analytic{Verdict::divergent, std::nullopt};
    // Terms <= (a j + c)^-k; the tail is at most the integral from H.
    const Natural at_h = Natural(f->slope * horizon + f->offset);
    const double bound = -(log10d(f->slope) + std::log10(static_cast<double>(k - 1)) +
                           static_cast<double>(k - 1) * log10d(at_h));
    return Analytic{Verdict::convergent, bound};
  }
  if (const auto* f = std::get_if<family::PowerFloor>(&fam)) {
    const Rational ak = f->exponent * k;
    if (ak <= 1) return Analytic{Verdict::divergent, std::nullopt};
    // q_n > n^alpha, so terms are below j^(-alpha k).
    const double s = to_double(ak);
    return Analytic{Verdict::convergent, (1.0 - s) * std::log10(h) - std::log10(s - 1.0)};
  }
  if (std::holds_alternative<family::DoublyExponential>(fam)) {
    // Terms <= 2^(-2^j); tail <= 2 * 2^(-2^(H+1)).
    return Analytic{Verdict::convergent,
                    (1.0 - std::exp2(h + 1.0)) * std::log10(2.0)};
  }
  if (const auto* f = std::get_if<family::Geometric>(&fam)) {
    const double lr = log10d(f->ratio);
    return Analytic{Verdict::convergent, -h * lr - log10d(f->ratio - 1)};
  }
  return std::nullopt;
}

Json real_json(const Real& value) { return to_string(value, 20); }

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::divergent:
      return "divergent";
    case Verdict::convergent:
      return "convergent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(ReportKind kind) {
  return kind == ReportKind::analytic ? "analytic" : "numeric-estimate";
}

DivergenceReport classify_divergence(const BasicSequence& seq, std::uint64_t k,
                                     std::uint64_t horizon, bool strong,
                                     const DivergenceOptions& options) {
  if (k == 0) throw Error(ErrorKind::domain, "k must be >= 1");
  if (horizon < k) {
    throw Error(ErrorKind::invalid_horizon, "horizon " + std::to_string(horizon) +
                                                " is smaller than k = " + std::to_string(k));
  }
  const std::uint64_t half = std::max<std::uint64_t>(1, horizon / 2);
  const std::vector<std::uint64_t> checkpoints{half, horizon};
  const Real threshold(options.tail_threshold);

  DivergenceReport report;
  report.k = k;
  report.horizon = horizon;
  const auto sums = q_partial_real(seq, k, checkpoints);
  report.value_at_horizon = sums[1];
  report.tail_increment = sums[1] - sums[0];
  report.bounded_estimate = report.tail_increment < threshold;

  const auto analytic = analytic_verdict(seq, k, horizon);
  auto numeric_verdict = [](bool bounded) {
    return bounded ? Verdict::inconclusive : Verdict::divergent;
  };

  if (analytic) {
    report.kind = ReportKind::analytic;
    report.verdict = analytic->verdict;
    if (analytic->verdict == Verdict::convergent) {
      report.q_infinity_estimate = report.value_at_horizon;
      report.tail_bound_log10 = analytic->tail_bound_log10;
    }
  } else {
    report.kind = ReportKind::numeric_estimate;
    report.verdict = numeric_verdict(report.bounded_estimate);
  }

  if (strong) {
    std::vector<PhaseDivergence> phases;
    for (std::uint64_t p = 1; p <= k; ++p) {
      const auto phase_sums = q_partial_strided_real(seq, k, p, checkpoints);
      PhaseDivergence phase;
      phase.p = p;
      phase.value_at_horizon = phase_sums[1];
      phase.tail_increment = phase_sums[1] - phase_sums[0];
      phase.bounded_estimate = phase.tail_increment < threshold;
      // Monotone closed forms: every phase shares the full sum's verdict.
      phase.verdict = analytic ? analytic->verdict : numeric_verdict(phase.bounded_estimate);
      phases.push_back(std::move(phase));
    }
    report.per_phase = std::move(phases);
  }
  return report;
}

Json to_json(const DivergenceReport& report) {
  Json out;
  out["kind"] = std::string(to_string(report.kind));
  out["k"] = report.k;
  out["horizon"] = report.horizon;
  out["value_at_horizon"] = real_json(report.value_at_horizon);
  out["verdict"] = std::string(to_string(report.verdict));
  out["tail_increment"] = real_json(report.tail_increment);
  out["bounded_estimate"] = report.bounded_estimate;
  if (report.per_phase) {
    Json phases = Json::array();
    for (const auto& phase : *report.per_phase) {
      Json item;
      item["p"] = phase.p;
      item["value_at_horizon"] = real_json(phase.value_at_horizon);
      item["verdict"] = std::string(to_string(phase.verdict));
      item["tail_increment"] = real_json(phase.tail_increment);
      item["bounded_estimate"] = phase.bounded_estimate;
      phases.push_back(std::move(item));
    }
    out["per_phase"] = std::move(phases);
  }
  if (report.q_infinity_estimate) out["q_infinity_estimate"] = real_json(*report.q_infinity_estimate);
  if (report.tail_bound_log10) out["tail_bound_log10"] = *report.tail_bound_log10;
  return out;
}

}  // namespace cantor
