#include <gtest/gtest.h>

#include <random>

#include "dimsum/dimsum.hpp"
#include "dimsum/imsum.hpp"

using dimsum::DimSum;
using dimsum::ImSum;
using dimsum::Params;

namespace {
constexpr dimsum::FlowId a = 1, b = 2, c = 3, d = 4, e = 5;
}

TEST(DimSum, FreshState) {
  const Params p = Params::make(0.5, 1.0);
  DimSum s(p);
  EXPECT_EQ(s.query(7), 0u);
  EXPECT_TRUE(s.elephants(0.5).empty());
  EXPECT_EQ(s.params().table_capacity, 3u);
  EXPECT_EQ(s.params().k, 2u);
  EXPECT_EQ(s.params().g_min, 2u);
  EXPECT_EQ(s.phase(), DimSum::Phase::Idle);
}

TEST(DimSum, HandTrace) {
  DimSum s(Params::make(0.5, 1.0));
  for (auto [id, w] : {std::pair{a, 5}, {b, 3}, {c, 2}, {d, 1}, {a, 2}, {e, 4}}) s.update(id, w);
  EXPECT_EQ(s.quantile(), 3u);
  EXPECT_EQ(s.query(b), 3u);
  EXPECT_EQ(s.query(a), 7u);
  EXPECT_EQ(s.elephants(0.3), std::vector<dimsum::FlowId>{a});
  EXPECT_EQ(s.stats().schedule_overruns, 0u);
}

TEST(DimSum, CycleBudget) {
  const Params p = Params::from_log2(-4, 2.0);
  DimSum s(p);
  EXPECT_EQ(s.cycle_ops(), (dimsum::kSelectionOpFactor + 2) * p.table_capacity + (p.k - 1));
}

TEST(DimSum, LargeBudgetFinishesInOneSlice) {
  const Params p = Params::from_log2(-3, 1.0);
  DimSum s(p);
  std::uint64_t id = 1;
  while (s.generation() == 0) s.update(id++, 1 + id % 5);
  // the first Passive table is full; maintenance was started and may be mid-way
  s.maintenance_slice(UINT64_MAX);
  EXPECT_EQ(s.phase(), DimSum::Phase::Idle);
  EXPECT_EQ(s.remaining_ops(), 0u);
}

TEST(DimSum, MidCopyQueryStillSeesPassive) {
  const Params p = Params::from_log2(-3, 1.0);  // k = 8, T = 15
  DimSum s(p);
  for (std::uint64_t id = 1; id <= p.table_capacity; ++id) s.update(id, id * 10);
  ASSERT_EQ(s.generation(), 1u);
  // walk the maintenance forward one op at a time and check reads at every point
  while (s.phase() != DimSum::Phase::Idle) {
    for (std::uint64_t id = 1; id <= p.table_capacity; ++id) ASSERT_EQ(s.query(id), id * 10);
    s.maintenance_slice(1);
  }
  for (std::uint64_t id = 1; id <= p.table_capacity; ++id) ASSERT_EQ(s.query(id), id * 10);
  EXPECT_EQ(s.pending_quantile(), 80u);
  EXPECT_EQ(s.active().size(), 7u);
}

TEST(DimSum, FreshFlowsAfterSwapFinishMaintenanceBeforeFill) {
  for (int e = 2; e <= 8; ++e) {
    for (double gamma : {0.5, 1.0, 4.0}) {
      const Params p = Params::from_log2(-e, gamma);
      DimSum s(p);
      std::uint64_t id = 1;
      std::mt19937_64 rng(e);
      while (s.generation() < 4) {
        if (s.phase() != DimSum::Phase::Idle) ASSERT_GE(s.remaining_updates(), 1);
        // every id is new, so each update consumes an Active slot
        ASSERT_NO_THROW(s.update(id++, 1 + rng() % 100));
      }
      EXPECT_EQ(s.stats().schedule_overruns, 0u);
      EXPECT_GE(s.stats().min_generation_updates, p.g_min);
    }
  }
}

TEST(DimSum, SliceBudgetsDoNotChangeTheOutcome) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    const Params p = Params::from_log2(-static_cast<int>(2 + rng() % 4), 0.5 + (rng() % 4));
    ImSum ref(p);
    DimSum s(p);
    const std::uint64_t universe = 4 + rng() % 60;
    for (int i = 0; i < 600; ++i) {
      if (s.phase() != DimSum::Phase::Idle && rng() % 3 == 0) s.maintenance_slice(1 + rng() % 8);
      const std::uint64_t id = 1 + rng() % universe;
      const std::uint64_t w = rng() % 20;
      ref.update(id, w);
      s.update(id, w);
      ASSERT_EQ(ref.quantile(), s.quantile());
      for (std::uint64_t x = 1; x <= universe; ++x) ASSERT_EQ(ref.query(x), s.query(x));
    }
  }
}
