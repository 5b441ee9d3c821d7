#include <gtest/gtest.h>

#include <random>

#include "dimsum/exact_oracle.hpp"

using dimsum::ExactOracle;

TEST(ExactOracle, SingleUpdate) {
  ExactOracle o;
  o.update(1, 5);
  EXPECT_EQ(o.frequency(1), 5u);
  EXPECT_EQ(o.total_weight(), 5u);
  EXPECT_EQ(o.length(), 1u);
}

TEST(ExactOracle, Accumulates) {
  ExactOracle o;
  o.update(1, 5);
  o.update(1, 3);
  EXPECT_EQ(o.frequency(1), 8u);
  EXPECT_EQ(o.total_weight(), 8u);
  EXPECT_EQ(o.length(), 2u);
}

TEST(ExactOracle, ZeroWeightCreatesKey) {
  ExactOracle o;
  o.update(1, 0);
  EXPECT_EQ(o.distinct(), 1u);
  EXPECT_EQ(o.frequency(1), 0u);
  EXPECT_EQ(o.total_weight(), 0u);
  EXPECT_EQ(o.length(), 1u);
}

TEST(ExactOracle, ElephantsStrict) {
  ExactOracle o;
  o.update(1, 7);
  o.update(2, 3);
  EXPECT_EQ(o.elephants(0.5), (std::unordered_set<dimsum::FlowId>{1}));
  EXPECT_TRUE(o.elephants(0.7).empty());
  ExactOracle even;
  even.update(1, 5);
  even.update(2, 5);
  EXPECT_EQ(even.elephants(0.3), (std::unordered_set<dimsum::FlowId>{1, 2}));
}

TEST(ExactOracle, OverflowIsFatal) {
  ExactOracle o;
  o.update(1, UINT64_MAX);
  EXPECT_THROW(o.update(2, 1), dimsum::VolumeOverflow);
}

TEST(ExactOracle, TotalMatchesIndependentSum) {
  std::mt19937_64 rng(9);
  ExactOracle o;
  dimsum::Volume sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const dimsum::Volume w = rng() % 1000;
    o.update(rng() % 300, w);
    sum += w;
  }
  EXPECT_EQ(o.total_weight(), sum);
  dimsum::Volume by_key = 0;
  for (const auto& [id, f] : o.counts()) by_key += f;
  EXPECT_EQ(by_key, sum);
}
