#include <gtest/gtest.h>

#include "cantor/random.hpp"
#include "oracles.hpp"

using namespace cantor;

TEST(Philox, KnownAnswers) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}),
            (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreDeterministicAndDistinct) {
  Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(Philox, BelowIsUniform) {
  Philox4x32 g(7, 3);
  std::vector<int> hist(6);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const auto v = g.below(6);
    ASSERT_LT(v, 6u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_NEAR(h, draws / 6, 5 * std::sqrt(draws * (1.0 / 6) * (5.0 / 6)));
  EXPECT_EQ(g.below(1), 0u);
}

TEST(Philox, BelowNatural) {
  Philox4x32 g(1, 1);
  const Natural bound = pow(Natural(2), 130) + 17;
  bool high = false;
  for (int i = 0; i < 200; ++i) {
    const Natural v = g.below(bound);
    EXPECT_LT(v, bound);
    high = high || v > pow(Natural(2), 129);
  }
  EXPECT_TRUE(high);
  std::vector<int> hist(3);
  for (int i = 0; i < 3000; ++i) ++hist[g.below(Natural(3)).convert_to<int>()];
  for (int h : hist) EXPECT_NEAR(h, 1000, 5 * std::sqrt(3000 * (2.0 / 9)));
}
