#include <gtest/gtest.h>

#include "cantor/cbw.hpp"
#include "cantor/construct.hpp"
#include "cantor/counting.hpp"
#include "cantor/error.hpp"
#include "cantor/stochastic.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

std::vector<Digit> naive_digits(const std::vector<ScaledStage>& stages) {
  std::vector<Digit> out;
  for (const auto& s : stages) {
    std::vector<Digit> word;
    if (s.word) {
      for (std::size_t i = 0; i < s.word->length(); ++i) word.push_back(to_u64(s.word->entries().value(i)));
    } else {
      word = CbwOrdering(s.base, s.width).materialize();
    }
    for (Natural c = 0; c < s.copies; ++c) out.insert(out.end(), word.begin(), word.end());
  }
  return out;
}

}  // namespace

TEST(Construct, StandardSpecShape) {
  const auto spec = standard_spec();
  EXPECT_TRUE(spec->unbounded());
  EXPECT_EQ(spec->cumulative_length(1), 0);
  const Stage s2 = spec->stage(2);
  EXPECT_EQ(s2.base, 4u);
  EXPECT_EQ(s2.copies, pow(Natural(4), 26));
  EXPECT_EQ(s2.word_length, 25 * pow(Natural(4), 25));
  EXPECT_EQ(s2.epsilon, Rational(1, 5));
  EXPECT_EQ(spec->stage(1).epsilon, Rational(1, 2));
  const Stage s3 = spec->stage(3);
  EXPECT_EQ(s3.base, 6u);
  EXPECT_EQ(s3.copies, pow(Natural(6), 35));
  EXPECT_EQ(s3.word_length, 49 * pow(Natural(6), 49));
  EXPECT_EQ(spec->cumulative_length(2), pow(Natural(4), 26) * 25 * pow(Natural(4), 25));
  EXPECT_EQ(spec->radix_at(Natural(1)), 4u);
  EXPECT_EQ(spec->radix_at(spec->cumulative_length(2)), 4u);
  EXPECT_EQ(spec->radix_at(spec->cumulative_length(2) + 1), 6u);
}

TEST(Construct, StandardSpecDigits) {
  const auto spec = standard_spec();
  const CbwOrdering c425(4, 25);
  const auto first = spec_digit_at(*spec, Natural(1));
  EXPECT_EQ(first.radix, 4u);
  EXPECT_EQ(first.digit, c425.digit_at(Natural(1)));
  const auto last = spec_digit_at(*spec, spec->cumulative_length(2));
  EXPECT_EQ(last.digit, c425.digit_at(c425.length()));
  const Natural mid = c425.length() * 7 + 12345;
  EXPECT_EQ(spec_digit_at(*spec, mid).digit, c425.digit_at(Natural(12345)));
}

TEST(Construct, ScaledLengths) {
  const auto spec = scaled_spec({{0, 2, 1, {}}, {3, 4, 3, {}}, {3, 6, 3, {}}});
  EXPECT_EQ(spec->cumulative_length(1), 0);
  EXPECT_EQ(spec->cumulative_length(2), 3 * 192);
  EXPECT_EQ(spec->cumulative_length(3), 3 * 192 + 3 * 648);
  EXPECT_TRUE(spec->violations().empty());
  EXPECT_EQ(spec->descriptor(), "scaled:0,2,1/3,4,3/3,6,3");
  EXPECT_THROW(spec->locate(spec->stored_length() + 1), Error);
  EXPECT_EQ(spec->radix_at(spec->stored_length() + 10), 6u);

  const auto single = scaled_spec({{5, 3, 1, {}}});
  const auto p = construction_prefix(single, 15);
  for (std::uint64_t n = 1; n <= 15; ++n) EXPECT_EQ(p.digit(n), (n - 1) % 3);

  const auto bad = scaled_spec({{4, 4, 3, {}}, {5, 2, 3, {}}, {2, 2, 3, {}}});
  EXPECT_EQ(bad->violations().size(), 2u);
  EXPECT_THROW(scaled_spec({{1, 2, 2, {}}}), Error);
}

TEST(Construct, TruncatedStandardSpec) {
  const auto spec = standard_spec()->with_copies(2, Natural(2));
  EXPECT_FALSE(spec->unbounded());
  EXPECT_EQ(spec->cumulative_length(2), 2 * 25 * pow(Natural(4), 25));
  EXPECT_EQ(spec->stored_stages(), standard_spec()->stored_stages());
  EXPECT_EQ(spec->descriptor().rfind("scaled:0,2,=0.1/2,4,25", 0), 0u);
  const auto p = construction_prefix(spec, 3000);
  const CbwOrdering c425(4, 25);
  for (std::uint64_t n = 1; n <= 3000; n += 37) EXPECT_EQ(p.digit(n), c425.digit_at(Natural(n)));
}

TEST(Construct, StreamMatchesRandomAccess) {
  const std::vector<ScaledStage> stages{{2, 2, 3, {}}, {1, 3, 1, {}}, {3, 3, 3, {}}, {2, 5, 3, {}}};
  const auto spec = scaled_spec(stages);
  const auto naive = naive_digits(stages);
  ASSERT_EQ(Natural(naive.size()), spec->stored_length());
  oracle::Gen gen(17);
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t start = gen.range(1, naive.size());
    const std::uint64_t count = gen.range(1, naive.size() - start + 1);
    for (std::uint64_t cap : {std::uint64_t{1} << 24, std::uint64_t{4}}) {
      SpecStream stream(spec, Natural(start), cap);
      for (std::uint64_t j = 0; j < count; ++j) {
        const auto d = stream.next();
        ASSERT_EQ(d.digit, naive[start - 1 + j]) << start << "+" << j << " cap " << cap;
        ASSERT_EQ(d.radix, spec->radix_at(Natural(start + j)));
      }
    }
    const auto random = spec_digit_at(*spec, Natural(start));
    EXPECT_EQ(random.digit, naive[start - 1]);
  }
  const auto streamed = stream_digits(spec, Natural(1), naive.size());
  EXPECT_EQ(streamed.digits, DigitString(naive));
}

TEST(Construct, ScaledDescriptorRoundTrip) {
  const auto spec = parse_scaled_spec("0,2,=0.1/2,4,3/1,3,=2.2.0");
  EXPECT_EQ(spec->descriptor(), "scaled:0,2,=0.1/2,4,3/1,3,=2.2.0");
  EXPECT_EQ(spec->stored_length(), 2 * 192 + 3);
  EXPECT_EQ(spec_digit_at(*spec, Natural(2 * 192 + 1)).digit, 2u);
  EXPECT_THROW(parse_scaled_spec("1,2"), Error);
  EXPECT_THROW(parse_scaled_spec("1,2,=0.2"), Error);
}

TEST(Construct, WgoodRatios) {
  const auto spec = standard_spec();
  for (std::uint64_t k : {1, 2, 5}) {
    const auto r = wgood_ratios(*spec, k, 2, 4);
    const auto* r1 = r.find("r1");
    ASSERT_NE(r1, nullptr);
    const double want = std::pow(4.0, k) * (10.0 / 3.0) / (25.0 * std::pow(4.0, 25));
    EXPECT_NEAR(*r1->values[0].value / want, 1.0, 1e-12);
    EXPECT_TRUE(r1->params["strictly_decreasing"].get<bool>());
  }
  const auto r = wgood_ratios(*spec, 1, 2, 4);
  EXPECT_EQ(*r.find("r2")->values[0].value, 0.0);
  EXPECT_FALSE(r.find("r3")->params["strictly_decreasing"].get<bool>());
  EXPECT_FALSE(r.summary["all_strictly_decreasing"].get<bool>());

  const auto tiny = scaled_spec({{1, 2, 3, {}}, {1, 4, 3, {}}, {1, 6, 3, {}}, {1, 8, 3, {}}, {1, 10, 3, {}}});
  const auto t = wgood_ratios(*tiny, 1, 2, 4);
  EXPECT_FALSE(t.find("r3")->params["strictly_decreasing"].get<bool>());
}

TEST(Construct, RatioNormalTransform) {
  const DigitPrefix source(BasicSequence::parse("list:9,9,9;tail=const:9"), DigitString{5, 7, 2});
  const auto out = ratio_normal_transform(source, BasicSequence::parse("list:3,4,10;tail=const:10"));
  EXPECT_EQ(out.digits(), (DigitString{2, 3, 2}));
  const DigitPrefix small(BasicSequence::constant(3), DigitString{0, 1, 2, 1});
  EXPECT_EQ(ratio_normal_transform(small, BasicSequence::constant(5)).digits(), small.digits());
}

TEST(Construct, TransformPreservesSmallBlocks) {
  const auto target = BasicSequence::affine(1, 1);
  const auto source = sample_prefix(BasicSequence::constant(10), 1000, 4);
  const auto image = ratio_normal_transform(source, target);
  const std::uint64_t l = 5;
  const auto start = tail_index(target, Natural(l), 1000)->index;
  for (std::uint64_t n = start; n + 1 <= 1000; ++n) {
    const Natural a = source.digit(n), b = source.digit(n + 1);
    const bool small_block = a <= l - 2 && b <= l - 2;
    if (small_block) {
      EXPECT_EQ(image.digit(n), a);
      EXPECT_EQ(image.digit(n + 1), b);
    }
    const bool image_small = image.digit(n) <= l - 2 && image.digit(n + 1) <= l - 2;
    if (image_small) EXPECT_TRUE(small_block);
  }
}

TEST(Construct, Champernowne) {
  EXPECT_EQ(champernowne_prefix(10, 12).digits(), (DigitString{1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1}));
  EXPECT_EQ(champernowne_prefix(2, 6).digits(), (DigitString{1, 1, 0, 1, 1, 1}));
  EXPECT_EQ(champernowne_prefix(7, 1).digits(), (DigitString{1}));
  const auto big = champernowne_prefix(3, 5000);
  EXPECT_EQ(big.digits(), DigitString(oracle::champernowne(3, 5000)));
}

TEST(Construct, StrongReportBiasOnConstruction) {
  const auto spec = parse_scaled_spec("0,2,=0.1/20,4,3/1,4,3");
  const auto p = construction_prefix(spec, spec->stored_length().convert_to<std::uint64_t>());
  const std::uint64_t n = p.length() - 2;
  const auto report = strong_normality_report(p, n, 2, 4);
  const auto* ones = report.find("lead:m=2,p=1,d=1");
  const auto* zeros = report.find("lead:m=2,p=1,d=0");
  ASSERT_TRUE(ones && zeros);
  EXPECT_LE(*ones->values.back().value, 0.6);
  EXPECT_GT(*zeros->values.back().value, 1.0);
}
