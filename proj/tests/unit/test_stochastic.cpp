#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cantor/counting.hpp"
#include "cantor/stochastic.hpp"
#include "oracles.hpp"

using namespace cantor;

TEST(Sampling, BoundsAndDeterminism) {
  const auto seq = BasicSequence::parse("list:2,3,1000000007;tail=affine:1,1");
  const auto a = sample_prefix(seq, 2000, 5);
  const auto b = sample_prefix(seq, 2000, 5);
  const auto c = sample_prefix(seq, 2000, 6);
  EXPECT_EQ(a.digits(), b.digits());
  EXPECT_FALSE(a.digits() == c.digits());
  for (std::uint64_t n = 1; n <= 2000; ++n) EXPECT_LT(a.digit(n), seq.q(n));
  const auto wide = sample_prefix(BasicSequence::doubly_exponential(), 8, 1);
  EXPECT_TRUE(wide.digits().is_wide());
}

TEST(Sampling, MeanDigit) {
  const auto p = sample_prefix(BasicSequence::constant(2), 100000, 11);
  double sum = 0;
  for (std::uint64_t n = 1; n <= 100000; ++n) sum += p.digit(n).convert_to<double>();
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Moments, Examples) {
  const auto c10 = moments(BasicSequence::constant(10), 20, 2, 1);
  for (const auto& f : c10.expected) EXPECT_EQ(f, Rational(1, 100));
  for (const auto& v : c10.variance) EXPECT_EQ(v, Rational(99, 10000));
  const auto c2 = moments(BasicSequence::constant(2), 4, 1, 1);
  EXPECT_EQ(c2.t, Rational(1));
  EXPECT_EQ(c2.q, Rational(2));
  const auto af = moments(BasicSequence::affine(1, 1), 2, 1, 1);
  EXPECT_EQ(af.expected, (std::vector<Rational>{Rational(1, 2), Rational(1, 3)}));
  EXPECT_EQ(af.variance, (std::vector<Rational>{Rational(1, 4), Rational(2, 9)}));
  EXPECT_EQ(af.t, Rational(17, 36));
}

TEST(Moments, TnpBounds) {
  oracle::Gen gen(123);
  for (const char* desc : {"const:2", "const:3", "affine:1,1", "altomare", "powfloor:1/2,2",
                           "list:2,2,2,5;tail=const:2"}) {
    const auto seq = BasicSequence::parse(desc);
    for (int i = 0; i < 30; ++i) {
      const std::uint64_t k = gen.range(1, 3);
      const std::uint64_t n = gen.range(1, 60);
      const std::uint64_t p = gen.range(1, k);
      const auto m = moments(seq, n, k, p);
      EXPECT_EQ(m.q, q_partial_strided(seq, n, k, p));
      EXPECT_LE(m.q / 2, m.t);
      EXPECT_LT(m.t, m.q);
      bool all_two = true;
      for (const auto& f : m.expected) all_two = all_two && f == Rational(1, 2);
      EXPECT_EQ(m.q / 2 == m.t, all_two) << desc;
      const auto sums = moment_sums(seq, n, k, p);
      EXPECT_LT(abs(sums.q - to_real(m.q)), Real("1e-40"));
      EXPECT_LT(abs(sums.t - to_real(m.t)), Real("1e-40"));
    }
  }
}

TEST(Lil, Deviation) {
  const DigitPrefix zeros(BasicSequence::constant(2), DigitString(std::vector<Digit>(40, 0)));
  const auto d = lil_deviation(zeros, Block{0}, 40, 1);
  ASSERT_TRUE(d);
  EXPECT_NEAR(*d, 20.0 / std::sqrt(20.0 * std::log(std::log(10.0))), 1e-12);
  EXPECT_NEAR(*d, 4.897, 1e-3);
  std::vector<Digit> alt;
  for (int i = 0; i < 40; ++i) alt.push_back(i % 2);
  EXPECT_EQ(*lil_deviation(DigitPrefix(BasicSequence::constant(2), DigitString(alt)), Block{0}, 40, 1), 0.0);
  EXPECT_FALSE(lil_deviation(zeros, Block{0}, 8, 1));
}

TEST(Lil, TypicalBehaviour) {
  LilConfig cfg{BasicSequence::parse("powfloor:1/2,2"), Block{0}, 20000, 200, 9, 3.0, 4, false};
  const auto r = run_lil_experiment(cfg);
  ASSERT_EQ(r.trials.size(), 200u);
  EXPECT_GE(r.fraction_within, 0.95);
  EXPECT_GT(r.variance_ratio, 0.7);
  EXPECT_LT(r.variance_ratio, 1.3);
  const double se = std::sqrt(r.t.convert_to<double>() / 200);
  EXPECT_NEAR(r.mean, r.q.convert_to<double>(), 4 * se);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Lil, AdversarialControl) {
  LilConfig cfg{BasicSequence::constant(2), Block{0}, 10000, 5, 1, 3.0, 1, true};
  const auto r = run_lil_experiment(cfg);
  EXPECT_EQ(r.fraction_within, 0.0);
  for (const auto& t : r.trials) EXPECT_EQ(t.count, 10000u);
}

TEST(Lil, ThreadCountDoesNotChangeOutput) {
  LilConfig cfg{BasicSequence::affine(1, 1), Block{1}, 3000, 16, 77, 3.0, 1, false};
  const auto one = to_json(run_lil_experiment(cfg)).dump();
  cfg.threads = 5;
  EXPECT_EQ(to_json(run_lil_experiment(cfg)).dump(), one);
  EXPECT_EQ(one.find("threads"), std::string::npos);
}

TEST(Omission, ConvergentCase) {
  OmissionConfig cfg{BasicSequence::geometric(2), 1, 30, 2000, 3, 4};
  const auto r = run_omission_experiment(cfg);
  Rational product = 1;
  for (unsigned j = 1; j <= 30; ++j) product *= 1 - Rational(Natural(1), pow(Natural(2), j));
  EXPECT_EQ(r.product, product);
  EXPECT_NEAR(product.convert_to<double>(), 0.2888, 1e-4);
  EXPECT_NEAR(r.omission_fraction, product.convert_to<double>(), 0.05);
  EXPECT_GE(r.stable_fraction, r.stable_prediction.convert_to<double>() - 0.05);
}

TEST(Omission, DivergentAndTrivialCases) {
  const auto d = run_omission_experiment({BasicSequence::constant(2), 1, 30, 500, 3, 2});
  EXPECT_EQ(d.product, Rational(Natural(1), pow(Natural(2), 30)));
  EXPECT_LE(d.omission_fraction, 0.01);
  const auto t = run_omission_experiment({BasicSequence::constant(4), 1, 1, 4000, 8, 2});
  EXPECT_EQ(t.product, Rational(3, 4));
  EXPECT_NEAR(t.omission_fraction, 0.75, 4 * std::sqrt(0.75 * 0.25 / 4000));
}

TEST(Stochastic, IndependenceSmoke) {
  // Indicator sums on disjoint halves should be uncorrelated across trials.
  const auto seq = BasicSequence::constant(3);
  const int trials = 400;
  std::vector<double> a, b;
  for (int i = 0; i < trials; ++i) {
    const auto p = sample_prefix(seq, 2000, 1234, i);
    a.push_back(static_cast<double>(count_occurrences(p.digits().slice(0, 1000), Block{0}, 1000)));
    b.push_back(static_cast<double>(count_occurrences(p.digits().slice(1000, 1000), Block{0}, 1000)));
  }
  double ma = 0, mb = 0;
  for (int i = 0; i < trials; ++i) ma += a[i] / trials, mb += b[i] / trials;
  double cov = 0, va = 0, vb = 0;
  for (int i = 0; i < trials; ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  const double corr = cov / std::sqrt(va * vb);
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(static_cast<double>(trials)));
}

TEST(Stochastic, CsvAndJson) {
  const auto r = run_omission_experiment({BasicSequence::geometric(2), 1, 10, 3, 1, 1});
  std::ostringstream out;
  write_csv(out, r);
  EXPECT_EQ(out.str().rfind("trial,N,N_half,omitted,stable\n", 0), 0u);
  const Json j = to_json(r);
  EXPECT_EQ(j["schema_version"], "1");
}
