#include "cantor/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cantor/construct.hpp"
#include "cantor/counting.hpp"
#include "cantor/error.hpp"
#include "cantor/random.hpp"

namespace cantor {

namespace {

/// Radices q_1..q_count, on machine words when they all fit.
struct Radices {
  std::optional<std::vector<std::uint64_t>> narrow;
  std::vector<Natural> wide;
};

Radices radices(const BasicSequence& seq, std::uint64_t count) {
  Radices out;
  out.narrow = radices_u64(seq, 1, count);
  if (!out.narrow) {
    out.wide.reserve(count);
    for (std::uint64_t n = 1; n <= count; ++n) out.wide.push_back(seq.q(n));
  }
  return out;
}

DigitString sample_digits(const Radices& q, Philox4x32& rng) {
  if (q.narrow) {
    std::vector<Digit> digits(q.narrow->size());
    for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = rng.below((*q.narrow)[i]);
    return DigitString(std::move(digits));
  }
  DigitString digits;
  digits.reserve(q.wide.size());
  for (const auto& radix : q.wide) digits.push_back(rng.below(radix));
  return digits;
}

/// Runs body(i) for i in [0, count) on `threads` workers; results are written
/// by index so the schedule never affects them.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::uint64_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Natural window_product(const BasicSequence& seq, std::uint64_t start, std::uint64_t k) {
  Natural product = 1;
  for (std::uint64_t i = 0; i < k; ++i) product *= seq.q(start + i);
  return product;
}

double loglog_scale(const Real& t) { return sqrt(2 * t * log(log(t))).convert_to<double>(); }

bool bounded_family(const BasicSequence& seq) {
  const Family& fam = seq.family();
  if (const auto* f = std::get_if<family::List>(&fam)) return bounded_family(*f->tail);
  if (std::holds_alternative<family::Constant>(fam)) return true;
  if (const auto* f = std::get_if<family::Affine>(&fam)) return f->slope == 0;
  if (const auto* f = std::get_if<family::PowerFloor>(&fam)) return f->exponent == 0;
  if (const auto* f = std::get_if<family::Construction>(&fam)) return !f->spec->unbounded();
  return false;
}

void check_trials(std::uint64_t n, std::uint64_t trials) {
  if (n == 0) throw Error(ErrorKind::config, "n must be >= 1");
  if (trials == 0) throw Error(ErrorKind::config, "trials must be >= 1");
}

Json real_json(const Real& value) { return to_string(value, 20); }

}  // namespace

DigitPrefix sample_prefix(const BasicSequence& seq, std::uint64_t n, std::uint64_t seed,
                          std::uint64_t stream) {
  Philox4x32 rng(seed, stream);
  return DigitPrefix(seq, sample_digits(radices(seq, n), rng));
}

MomentTable moments(const BasicSequence& seq, std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "n and k must be >= 1");
  if (p < 1 || p > k) throw Error(ErrorKind::domain, "p must lie in [1, k]");
  MomentTable table;
  table.n = n;
  table.k = k;
  table.p = p;
  const std::uint64_t terms = rho(n, k) + 1;
  table.expected.reserve(terms);
  table.variance.reserve(terms);
  for (std::uint64_t i = 0; i < terms; ++i) {
    Rational f(Natural(1), window_product(seq, i * k + p, k));
    Rational v = f - f * f;
    table.q += f;
    table.t += v;
    table.expected.push_back(std::move(f));
    table.variance.push_back(std::move(v));
  }
  return table;
}

MomentSums moment_sums(const BasicSequence& seq, std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "n and k must be >= 1");
  if (p < 1 || p > k) throw Error(ErrorKind::domain, "p must lie in [1, k]");
  MomentSums sums{Real(0), Real(0)};
  const std::uint64_t terms = rho(n, k) + 1;
  const auto narrow = radices_u64(seq, p, (terms - 1) * k + k);
  for (std::uint64_t i = 0; i < terms; ++i) {
    Real f = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
      f /= narrow ? Real((*narrow)[i * k + j]) : to_real(seq.q(i * k + p + j));
    }
    sums.q += f;
    sums.t += f - f * f;
  }
  return sums;
}

std::optional<double> lil_deviation(const DigitPrefix& prefix, const Block& block, std::uint64_t n,
                                    std::uint64_t p) {
  const std::uint64_t count = count_strided(prefix, block, n, p);
  const auto sums = moment_sums(prefix.sequence(), n, block.length(), p);
  if (sums.t <= exp(Real(1))) return std::nullopt;
  return ((Real(count) - sums.q) / sqrt(2 * sums.t * log(log(sums.t)))).convert_to<double>();
}

LilResult run_lil_experiment(const LilConfig& config) {
  check_trials(config.n, config.trials);
  if (!(config.c > 0)) throw Error(ErrorKind::config, "C must be positive");
  const std::uint64_t k = config.block.length();
  const std::uint64_t length = config.n + k - 1;

  LilResult result{config, {}, Real(0), Real(0), 0, 0, 0, 0, 0, {}};
  result.q = q_partial_real(config.seq, config.n, k);
  for (std::uint64_t p = 1; p <= k; ++p) result.t += moment_sums(config.seq, config.n, k, p).t;
  if (result.t <= exp(Real(1))) {
    throw Error(ErrorKind::config, "sum_p t_{n,p} = " + to_string(result.t, 6) +
                                       " is not above e; log log is undefined");
  }
  if (bounded_family(config.seq)) result.warnings.push_back("sequence is not infinite in limit");
  const double scale = loglog_scale(result.t);
  result.bound = config.c * scale;
  const double q = result.q.convert_to<double>();

  const Radices q_radices = radices(config.seq, length);
  result.trials.resize(config.trials);
  parallel_for(config.trials, config.threads, [&](std::uint64_t i) {
    DigitString digits;
    if (config.inject_all_zero) {
      digits = DigitString(std::vector<Digit>(length, 0));
    } else {
      Philox4x32 rng(config.seed, i);
      digits = sample_digits(q_radices, rng);
    }
    const std::uint64_t count = count_occurrences(digits, config.block, config.n);
    const double diff = static_cast<double>(count) - q;
    result.trials[i] = LilTrial{i, count, diff / scale, std::abs(diff) <= result.bound};
  });

  double sum = 0;
  std::uint64_t within = 0;
  for (const auto& t : result.trials) {
    sum += static_cast<double>(t.count);
    if (t.within) ++within;
  }
  const double trials = static_cast<double>(config.trials);
  result.mean = sum / trials;
  double squares = 0;
  for (const auto& t : result.trials) {
    const double d = static_cast<double>(t.count) - result.mean;
    squares += d * d;
  }
  result.sample_variance = config.trials > 1 ? squares / (trials - 1) : 0.0;
  result.variance_ratio = result.sample_variance / result.t.convert_to<double>();
  result.fraction_within = static_cast<double>(within) / trials;
  return result;
}

OmissionResult run_omission_experiment(const OmissionConfig& config) {
  check_trials(config.n, config.trials);
  if (config.k == 0) throw Error(ErrorKind::config, "k must be >= 1");
  if (config.k > config.n) throw Error(ErrorKind::config, "k must not exceed n");
  const std::uint64_t k = config.k;
  const std::uint64_t starts = config.n - k + 1;
  const std::uint64_t half = config.n / 2;
  const std::uint64_t half_starts = half >= k ? half - k + 1 : 0;

  OmissionResult result{config, {}, Rational(1), Rational(1)};
  for (std::uint64_t j = 1; j <= starts; ++j) {
    const Rational factor = 1 - Rational(Natural(1), window_product(config.seq, j, k));
    result.product *= factor;
    if (j > half_starts) result.stable_prediction *= factor;
  }

  const Block zeros(std::vector<Digit>(k, 0));
  const Radices q_radices = radices(config.seq, config.n);
  result.trials.resize(config.trials);
  parallel_for(config.trials, config.threads, [&](std::uint64_t i) {
    Philox4x32 rng(config.seed, i);
    const DigitString digits = sample_digits(q_radices, rng);
    std::vector<std::uint64_t> checkpoints;
    if (half_starts > 0) checkpoints.push_back(half_starts);
    checkpoints.push_back(starts);
    const auto counts = count_at_checkpoints(digits, zeros, checkpoints);
    OmissionTrial trial;
    trial.trial = i;
    trial.count = counts.back();
    trial.half_count = half_starts > 0 ? counts.front() : 0;
    trial.omitted = trial.count == 0;
    trial.stable = trial.count == trial.half_count;
    result.trials[i] = trial;
  });

  std::uint64_t omitted = 0;
  std::uint64_t stable = 0;
  for (const auto& t : result.trials) {
    if (t.omitted) ++omitted;
    if (t.stable) ++stable;
  }
  result.omission_fraction = static_cast<double>(omitted) / static_cast<double>(config.trials);
  result.stable_fraction = static_cast<double>(stable) / static_cast<double>(config.trials);
  return result;
}

Json to_json(const LilResult& result) {
  const auto& c = result.config;
  Json out;
  out["schema_version"] = schema_version;
  out["experiment"] = "lil";
  out["config"] = Json{{"seq", c.seq.descriptor()}, {"block", c.block.to_string()}, {"n", c.n},
                       {"trials", c.trials},        {"seed", c.seed},               {"c", c.c},
                       {"inject_all_zero", c.inject_all_zero}};
  out["summary"] = Json{{"Q", real_json(result.q)},
                        {"t", real_json(result.t)},
                        {"bound", result.bound},
                        {"mean", result.mean},
                        {"sample_variance", result.sample_variance},
                        {"variance_ratio", result.variance_ratio},
                        {"fraction_within", result.fraction_within}};
  out["warnings"] = result.warnings;
  Json trials = Json::array();
  for (const auto& t : result.trials) {
    trials.push_back(Json{{"trial", t.trial}, {"N", t.count}, {"deviation", t.deviation}, {"within", t.within}});
  }
  out["trials"] = std::move(trials);
  return out;
}

Json to_json(const OmissionResult& result) {
  const auto& c = result.config;
  Json out;
  out["schema_version"] = schema_version;
  out["experiment"] = "omission";
  out["config"] = Json{{"seq", c.seq.descriptor()}, {"k", c.k}, {"n", c.n}, {"trials", c.trials}, {"seed", c.seed}};
  out["summary"] = Json{{"omission_fraction", result.omission_fraction},
                        {"product", to_double(result.product)},
                        {"product_exact", to_string(result.product)},
                        {"difference", result.omission_fraction - to_double(result.product)},
                        {"stable_fraction", result.stable_fraction},
                        {"stable_prediction", to_double(result.stable_prediction)}};
  Json trials = Json::array();
  for (const auto& t : result.trials) {
    trials.push_back(Json{{"trial", t.trial},
                          {"N", t.count},
                          {"N_half", t.half_count},
                          {"omitted", t.omitted},
                          {"stable", t.stable}});
  }
  out["trials"] = std::move(trials);
  return out;
}

void write_csv(std::ostream& out, const LilResult& result) {
  out << "trial,N,deviation,within\n";
  out.precision(17);
  for (const auto& t : result.trials) {
    out << t.trial << ',' << t.count << ',' << t.deviation << ',' << (t.within ? 1 : 0) << '\n';
  }
}

void write_csv(std::ostream& out, const OmissionResult& result) {
  out << "trial,N,N_half,omitted,stable\n";
  for (const auto& t : result.trials) {
    out << t.trial << ',' << t.count << ',' << t.half_count << ',' << (t.omitted ? 1 : 0) << ','
        << (t.stable ? 1 : 0) << '\n';
  }
}

}  // namespace cantor
