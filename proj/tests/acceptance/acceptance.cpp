// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "cantor/cbw.hpp"
#include "cantor/construct.hpp"
#include "cantor/counting.hpp"
#include "cantor/expansion.hpp"
#include "cantor/stochastic.hpp"
#include "cantor/weighting.hpp"
#include "commands.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

// Tolerances and limits.
constexpr double e_tolerance = 1e-12;
constexpr double c1_seconds = 1.0;
constexpr double c2_seconds = 10.0;
constexpr int c2_instances = 1000;
constexpr int c3_instances = 500;
constexpr std::uint64_t c3_exhaustive_length = 12;
constexpr int c4_instances = 200;
constexpr int c5_instances = 200;
constexpr double c6_large_seconds = 5.0;
constexpr const char* c7_spec = "1000,2,3/150,4,5/1,6,7/1,8,9";
constexpr std::uint64_t c7_prefix = 1'000'000;
constexpr double c7_ratio_low = 0.8;
constexpr double c7_ratio_high = 1.2;
constexpr double c7_seconds = 30.0;
constexpr std::uint64_t c9_n = 100'000;
constexpr std::uint64_t c9_trials = 200;
constexpr std::uint64_t c9_seed = 20261016;
constexpr double c9_c = 3.0;
constexpr double c9_within = 0.95;
constexpr double c9_variance_low = 0.7;
constexpr double c9_variance_high = 1.3;
constexpr double c9_seconds = 120.0;
constexpr std::uint64_t c10_trials = 2000;
constexpr std::uint64_t c10_seed = 7;
constexpr double c10_tolerance = 0.05;
constexpr double c10_seconds = 10.0;
constexpr std::uint64_t c11_digits = 100'000;
constexpr std::uint64_t c11_max_block = 5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

const char* families[] = {"const:2",         "const:10",      "affine:1,1",     "affine:3,2",
                          "powfloor:1/2,2",  "powfloor:2/3,1", "altomare",       "geom:2",
                          "list:2,7,3;tail=affine:1,1",       "scaled:2,2,3/1,4,5"};

BasicSequence random_family(oracle::Gen& gen) {
  return BasicSequence::parse(families[gen.range(0, std::size(families) - 1)]);
}

Outcome c1() {
  Outcome o;
  std::ostringstream out, err;
  cli::run_cli({"expand", "1/4", "--seq", "const:10", "-n", "4"}, out, err);
  std::istringstream in(out.str());
  std::string header, body;
  std::getline(in, header);
  std::getline(in, body);
  const bool digits_ok = body == "2 5 0 0";

  const DigitPrefix ones(BasicSequence::affine(1, 1), DigitString(std::vector<Digit>(20, 1)));
  // e - 2 from 40 series terms, truncated to 30 decimals.
  const Rational series = oracle::e_minus_two(40);
  const Natural scale = pow(Natural(10), 30);
  const Rational e30(Natural(mp::numerator(series) * scale / mp::denominator(series)), scale);
  const double gap = to_double(abs(prefix_value(ones) - e30));
  o.pass = digits_ok && gap < e_tolerance;
  o.detail = "expand digits '" + body + "', |value - (e-2)| = " + fmt(gap);
  return o;
}

Outcome c2() {
  oracle::Gen gen(2);
  int bad = 0;
  for (int i = 0; i < c2_instances; ++i) {
    const auto seq = random_family(gen);
    const Natural den(gen.range(1, 1'000'000'000));
    const Natural num(gen.next() % den);
    const Rational x(num, den);
    const std::uint64_t n = seq.descriptor() == "geom:2" ? gen.range(1, 30) : gen.range(1, 60);
    const auto prefix = expand_rational(x, seq, n);
    Natural product = 1;
    for (std::uint64_t m = 1; m <= n; ++m) product *= seq.q(m);
    const Rational diff = x - prefix_value(prefix);
    if (diff < 0 || diff >= Rational(Natural(1), product)) ++bad;
  }
  return {bad == 0, std::to_string(c2_instances) + " rationals, " + std::to_string(bad) + " outside [0, 1/(q_1...q_N))"};
}

Outcome c3() {
  oracle::Gen gen(3);
  std::uint64_t checks = 0, mismatches = 0;
  auto compare = [&](const std::vector<Digit>& digits, const DigitString& ds, const std::vector<Digit>& block) {
    const std::uint64_t len = digits.size(), k = block.size();
    if (k > len) return;
    const std::uint64_t n = len - k + 1;
    ++checks;
    if (count_occurrences(ds, Block(block), n) != oracle::count(digits, block, n)) ++mismatches;
    for (std::uint64_t p = 1; p <= k; ++p) {
      if (k * (rho(n, k) + 1) + p - 1 > len) continue;
      ++checks;
      if (count_strided(ds, Block(block), n, p) != oracle::count_strided(digits, block, n, p)) ++mismatches;
    }
  };
  for (int i = 0; i < c3_instances; ++i) {
    const std::uint64_t alphabet = gen.range(2, 10);
    std::vector<Digit> digits(gen.range(1, 2000));
    for (auto& d : digits) d = gen.range(0, alphabet - 1);
    std::vector<Digit> block(gen.range(1, std::min<std::uint64_t>(6, digits.size())));
    for (auto& d : block) d = gen.range(0, alphabet - 1);
    compare(digits, DigitString(digits), block);
  }
  for (std::uint64_t alphabet = 2; alphabet <= 3; ++alphabet) {
    std::vector<std::vector<std::vector<Digit>>> blocks{{}, oracle::all_blocks(alphabet, 1), oracle::all_blocks(alphabet, 2)};
    if (alphabet == 2) blocks.push_back(oracle::all_blocks(2, 3));
    for (std::uint64_t len = 1; len <= c3_exhaustive_length; ++len) {
      for (const auto& word : oracle::all_blocks(alphabet, len)) {
        const DigitString ds(word);
        for (std::size_t k = 1; k < blocks.size(); ++k)
          for (const auto& b : blocks[k]) compare(word, ds, b);
        if (alphabet == 3 && len >= 3) compare(word, ds, std::vector<Digit>(word.end() - 3, word.end()));
      }
    }
  }
  return {mismatches == 0, std::to_string(checks) + " counter comparisons, " + std::to_string(mismatches) + " mismatches"};
}

Outcome c4() {
  oracle::Gen gen(4);
  int bad = 0;
  for (int i = 0; i < c4_instances; ++i) {
    const auto seq = random_family(gen);
    const std::uint64_t k = gen.range(1, 5);
    const std::uint64_t n = gen.range(1, 300);
    const auto prefix = sample_prefix(seq, n + 2 * k, gen.next());
    const auto& digits = prefix.digits();
    std::vector<Digit> block(k);
    for (auto& d : block) d = gen.range(0, 1);
    std::int64_t strided = 0;
    Rational q_phases = 0;
    for (std::uint64_t p = 1; p <= k; ++p) {
      strided += static_cast<std::int64_t>(count_strided(digits, Block(block), n, p));
      q_phases += q_partial_strided(seq, n, k, p);
    }
    const auto plain = static_cast<std::int64_t>(count_occurrences(digits, Block(block), n));
    const Rational gap = q_phases - q_partial(seq, n, k);
    const Rational bound = Rational(Natural(k - 1), pow(Natural(2), k));
    bool ok = std::llabs(strided - plain) <= static_cast<std::int64_t>(k - 1) && gap >= 0 && gap <= bound;
    if (n % k == 0) ok = ok && gap == 0 && strided == plain;
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(c4_instances) + " instances, " + std::to_string(bad) + " violations"};
}

Outcome c5() {
  oracle::Gen gen(5);
  int bad = 0;
  for (int i = 0; i < c5_instances; ++i) {
    const auto seq = random_family(gen);
    const std::uint64_t k = gen.range(1, 4);
    const auto m = moments(seq, gen.range(1, 200), k, gen.range(1, k));
    if (!(m.q / 2 <= m.t && m.t < m.q)) ++bad;
  }
  const auto edge = moments(BasicSequence::constant(2), 97, 1, 1);
  const bool boundary = edge.t == edge.q / 2;
  return {bad == 0 && boundary, std::to_string(c5_instances) + " instances, " + std::to_string(bad) +
                                    " violations; const:2 boundary t = Q/2: " + (boundary ? "yes" : "no")};
}

Outcome c6() {
  Outcome o;
  std::ostringstream detail;
  for (const auto& [b, w] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}, {2, 5}, {3, 3}, {4, 3}}) {
    const Block word(CbwOrdering(b, w).materialize());
    const auto direct = verify_cbw(word, b, w);
    const auto analytic = verify_bias_analytic(b, w);
    bool normal = true;
    for (std::uint64_t k = 1; k < w; ++k) {
      normal = normal && check_eps_k_normal(word, Rational(Natural(k), Natural(w)), k, Weighting::uniform(b), b).pass;
    }
    const bool ok = direct.complete && direct.bias_ok && analytic.zeros_odd == direct.zeros_odd &&
                    analytic.ones_odd == direct.ones_odd && normal;
    o.pass = o.pass && ok;
    detail << "(" << b << "," << w << ") " << (ok ? "ok" : "bad") << "; ";
  }
  const auto start = std::chrono::steady_clock::now();
  const auto large = verify_bias_analytic(4, 25);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = o.pass && large.bias_ok && secs < c6_large_seconds;
  detail << "(4,25) zeros_odd=" << large.zeros_odd.str() << " ones_odd=" << large.ones_odd.str()
         << " bias_ok=" << (large.bias_ok ? "true" : "false") << " in " << fmt(secs) << " s";
  o.detail = detail.str();
  return o;
}

Outcome c7() {
  const auto spec = parse_scaled_spec(c7_spec);
  SpecStream stream(spec, Natural(1));
  std::uint64_t zeros_odd = 0, ones_odd = 0, zeros = 0, ones = 0;
  bool every_prefix = true;
  double worst_ratio = 0;
  for (std::uint64_t n = 1; n <= c7_prefix; ++n) {
    const Digit d = stream.next().digit;
    zeros += d == 0;
    ones += d == 1;
    if (n % 2 == 1) {
      zeros_odd += d == 0;
      ones_odd += d == 1;
    }
    if (zeros_odd < 2 * ones_odd) every_prefix = false;
    if (zeros_odd > 0) worst_ratio = std::max(worst_ratio, static_cast<double>(ones_odd) / static_cast<double>(zeros_odd));
  }
  const double q = to_double(q_partial(BasicSequence::construction(spec), c7_prefix, 1));
  const double r0 = static_cast<double>(zeros) / q, r1 = static_cast<double>(ones) / q;
  const bool ratios = r0 >= c7_ratio_low && r0 <= c7_ratio_high && r1 >= c7_ratio_low && r1 <= c7_ratio_high;
  return {every_prefix && ratios && worst_ratio <= 0.5,
          "scaled:" + std::string(c7_spec) + " n=" + std::to_string(c7_prefix) + ": (a) " +
              (every_prefix ? "holds" : "fails") + ", (b) N/Q for 0 = " + fmt(r0) + ", for 1 = " + fmt(r1) +
              ", (c) max ones/zeros at odd positions = " + fmt(worst_ratio)};
}

Outcome c8() {
  const auto report = wgood_ratios(*standard_spec(), 1, 2, 4);
  std::ostringstream detail;
  bool all = true;
  for (const auto& s : report.series) {
    const bool dec = s.params["strictly_decreasing"].get<bool>();
    all = all && dec;
    detail << s.name << " log10 = (";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const auto& l = s.values[i].detail["log10"];
      detail << (i ? ", " : "") << (l.is_number() ? fmt(l.get<double>()) : std::string("-inf"));
    }
    detail << ") " << (dec ? "decreasing" : "not decreasing") << "; ";
  }
  return {all, detail.str()};
}

Outcome c9() {
  LilConfig cfg{BasicSequence::parse("powfloor:1/2,2"), Block{0}, c9_n, c9_trials, c9_seed, c9_c, worker_threads(), false};
  const auto r = run_lil_experiment(cfg);
  const bool ok = r.fraction_within >= c9_within && r.variance_ratio >= c9_variance_low &&
                  r.variance_ratio <= c9_variance_high;
  return {ok, "within-bound fraction " + fmt(r.fraction_within) + ", variance / sum t = " + fmt(r.variance_ratio)};
}

Outcome c10() {
  OmissionConfig cfg{BasicSequence::geometric(2), 1, 30, c10_trials, c10_seed, worker_threads()};
  const auto r = run_omission_experiment(cfg);
  Rational product = 1;
  for (unsigned j = 1; j <= 30; ++j) product *= 1 - Rational(Natural(1), pow(Natural(2), j));
  const double gap = std::abs(r.omission_fraction - to_double(product));
  return {r.product == product && gap <= c10_tolerance,
          "empirical " + fmt(r.omission_fraction) + " vs product " + fmt(to_double(product))};
}

Outcome c11() {
  const auto source = champernowne_prefix(10, c11_digits);
  const auto target = BasicSequence::affine(1, 1);
  const auto image = ratio_normal_transform(source, target);
  const std::uint64_t start = tail_index(target, Natural(9), c11_digits)->index;
  std::vector<Digit> src(c11_digits), img(c11_digits);
  for (std::uint64_t n = 1; n <= c11_digits; ++n) {
    src[n - 1] = to_u64(source.digit(n));
    img[n - 1] = to_u64(image.digit(n));
  }
  std::uint64_t windows = 0, disagreements = 0;
  for (std::uint64_t m = 1; m <= c11_max_block; ++m) {
    for (std::uint64_t n = start; n + m - 1 <= c11_digits; ++n) {
      bool src_in = true, img_in = true, same = true;
      for (std::uint64_t j = 0; j < m; ++j) {
        src_in = src_in && src[n - 1 + j] <= 8;
        img_in = img_in && img[n - 1 + j] <= 8;
        same = same && src[n - 1 + j] == img[n - 1 + j];
      }
      ++windows;
      if (src_in != img_in || (src_in && !same)) ++disagreements;
    }
  }
  return {disagreements == 0, "from position " + std::to_string(start) + ", " + std::to_string(windows) +
                                  " windows of length <= " + std::to_string(c11_max_block) + ", " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome c12() {
  const std::vector<std::vector<std::string>> experiments{
      {"experiment", "lil", "--seq", "powfloor:1/2,2", "-n", "20000", "--trials", "40", "--block", "0"},
      {"experiment", "lil", "--seq", "affine:1,1", "-n", "5000", "--trials", "30", "--block", "1"},
      {"experiment", "omission", "--seq", "geom:2", "-n", "30", "--trials", "500"},
      {"experiment", "omission", "--seq", "const:3", "-k", "2", "-n", "40", "--trials", "300"}};
  int identical = 0, total = 0;
  for (const auto& args : experiments) {
    std::string reference;
    for (const char* threads : {"1", "1", "2", "3", "8"}) {
      std::vector<std::string> full{"--seed", "99", "--threads", threads};
      full.insert(full.end(), args.begin(), args.end());
      std::ostringstream out, err;
      if (cli::run_cli(full, out, err) != 0) return {false, "experiment failed: " + err.str()};
      if (reference.empty()) reference = out.str();
      ++total;
      identical += out.str() == reference;
    }
  }
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                  " runs bit-identical across --threads 1,1,2,3,8"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example reproduction", c1, c1_seconds},
      {2, "expansion round trip", c2, c2_seconds},
      {3, "counting oracle equivalence", c3, 0},
      {4, "phase identities", c4, 0},
      {5, "moment variance bounds", c5, 0},
      {6, "C_{b,w} suite", c6, 0},
      {7, "scaled construction behaviour", c7, c7_seconds},
      {8, "W-good diagnostics", c8, 0},
      {9, "Monte Carlo iterated logarithm", c9, c9_seconds},
      {10, "omission experiment", c10, c10_seconds},
      {11, "ratio-normal transform", c11, 0},
      {12, "determinism", c12, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.limit_seconds) + " s limit";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.title << ": " << o.detail << " ["
              << fmt(secs) << " s]" << std::endl;
  }
  return failures;
}
