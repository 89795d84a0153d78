#include <gtest/gtest.h>

#include "cantor/weighting.hpp"

using namespace cantor;

TEST(Weighting, Uniform) {
  EXPECT_EQ(uniform_weight(2, Block{0, 1, 1}), Rational(1, 8));
  EXPECT_EQ(uniform_weight(10, Block{4}), Rational(1, 10));
  EXPECT_EQ(uniform_weight(4, Block(std::vector<Digit>(25, 3))),
            Rational(Natural(1), pow(Natural(4), 25)));
  EXPECT_EQ(Weighting::uniform(3).weight(Block{1, 2}), Rational(1, 9));
  EXPECT_TRUE(Weighting::uniform(3).check_consistency().ok);
}

TEST(Weighting, Table) {
  Weighting::Table t{{{0}, Rational(1, 3)}, {{1}, Rational(2, 3)},
                     {{0, 0}, Rational(1, 6)},  {{0, 1}, Rational(1, 6)},
                     {{1, 0}, Rational(1, 3)},  {{1, 1}, Rational(1, 3)}};
  const auto mu = Weighting::table(t);
  EXPECT_EQ(mu.weight(Block{1, 0}), Rational(1, 3));
  EXPECT_EQ(mu.weight(Block{2}), Rational(0));
  const auto ok = mu.check_consistency();
  EXPECT_TRUE(ok.ok);
  EXPECT_EQ(ok.first_order_mass, Rational(1));

  t[{1, 1}] = Rational(1, 2);
  const auto bad = Weighting::table(t).check_consistency();
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.problems.empty());

  const auto heavy = Weighting::table({{{0}, Rational(3, 4)}, {{1}, Rational(1, 2)}}).check_consistency();
  EXPECT_FALSE(heavy.ok);
  EXPECT_EQ(heavy.first_order_mass, Rational(5, 4));
}
