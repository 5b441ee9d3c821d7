#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "dimsum/selection.hpp"

using dimsum::SelectionTask;
using dimsum::Volume;

namespace {

Volume sort_oracle(std::vector<Volume> v, std::size_t k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v[k - 1];
}

Volume run_to_completion(SelectionTask& task, std::mt19937_64& rng) {
  while (!task.done()) {
    const std::uint64_t budget = 1 + rng() % 64;
    const std::uint64_t before = task.ops_spent();
    task.step(budget);
    EXPECT_LE(task.ops_spent() - before, budget);
  }
  return task.result();
}

std::vector<Volume> random_values(std::mt19937_64& rng, std::size_t n) {
  // heavy duplication: draw from a small alphabet most of the time
  const Volume alphabet = 1 + rng() % (rng() % 2 ? 8 : 1'000'000);
  std::vector<Volume> v(n);
  for (auto& x : v) x = rng() % alphabet;
  return v;
}

}  // namespace

TEST(KthLargest, Examples) {
  const std::vector<Volume> v{1, 5, 3, 2, 4};
  EXPECT_EQ(dimsum::kth_largest(v, 1), 5u);
  EXPECT_EQ(dimsum::kth_largest(v, 2), 4u);
  EXPECT_EQ(dimsum::kth_largest(std::vector<Volume>{3, 3, 3}, 2), 3u);
}

TEST(KthLargest, RankOutOfRange) {
  const std::vector<Volume> v{1, 2};
  EXPECT_THROW(dimsum::kth_largest(v, 0), dimsum::RankOutOfRange);
  EXPECT_THROW(dimsum::kth_largest(v, 3), dimsum::RankOutOfRange);
  EXPECT_THROW(SelectionTask({}, 1), dimsum::RankOutOfRange);
  EXPECT_THROW(SelectionTask({1, 2}, 0), dimsum::RankOutOfRange);
}

TEST(KthLargest, LargeRandomMatchesSort) {
  std::mt19937_64 rng(1);
  std::vector<Volume> v(10000);
  for (auto& x : v) x = rng();
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = 1 + rng() % v.size();
    EXPECT_EQ(dimsum::kth_largest(v, k), sort_oracle(v, k));
  }
}

TEST(SelectionTask, SingletonIsDoneImmediately) {
  SelectionTask t({7}, 1);
  EXPECT_TRUE(t.done());
  EXPECT_EQ(t.result(), 7u);
  EXPECT_EQ(t.step(1), 7u);
}

TEST(SelectionTask, PairNeedsOneStep) {
  SelectionTask t({1, 2}, 2);
  EXPECT_FALSE(t.done());
  EXPECT_EQ(t.step(16), 1u);
  EXPECT_TRUE(t.done());
}

TEST(SelectionTask, UnitBudgetsMatchOneShot) {
  SelectionTask t({1, 5, 3, 2, 4}, 2);
  std::optional<Volume> r;
  while (!(r = t.step(1))) {
  }
  EXPECT_EQ(*r, 4u);
  EXPECT_LE(t.ops_spent(), 24u * 5);
  EXPECT_EQ(t.step(1), 4u);
  EXPECT_EQ(t.result(), 4u);
}

TEST(SelectionTask, HugeBudgetCompletesInOneCall) {
  SelectionTask t({1, 5, 3, 2, 4}, 2);
  EXPECT_EQ(t.step(1'000'000'000), 4u);
}

TEST(SelectionTask, CountGreater) {
  SelectionTask t({5, 3, 3, 3, 1, 9}, 3);
  t.step(UINT64_MAX);
  EXPECT_EQ(t.result(), 3u);
  EXPECT_EQ(t.count_greater(), 2u);
}

TEST(SelectionTask, OracleEquivalenceUnderRandomBudgets) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng() % 512;
    const auto values = random_values(rng, n);
    const std::size_t k = 1 + rng() % n;
    const Volume expected = sort_oracle(values, k);
    ASSERT_EQ(dimsum::kth_largest(values, k), expected);
    SelectionTask task(values, k);
    ASSERT_EQ(run_to_completion(task, rng), expected);
    ASSERT_LE(task.ops_spent(), dimsum::kSelectionOpFactor * n) << "n=" << n << " k=" << k;
    const auto greater = std::count_if(values.begin(), values.end(), [&](Volume x) { return x > expected; });
    ASSERT_EQ(task.count_greater(), static_cast<std::size_t>(greater));
  }
}

TEST(SelectionTask, DeterministicStateAndCost) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 2000;
    const auto values = random_values(rng, n);
    const std::size_t k = 1 + rng() % n;
    SelectionTask a(values, k);
    SelectionTask b(values, k);
    const std::uint64_t budget = 1 + rng() % 40;
    while (!a.done()) {
      a.step(budget);
      b.step(budget);
      ASSERT_EQ(a.digest(), b.digest());
      ASSERT_EQ(a.ops_spent(), b.ops_spent());
    }
    ASSERT_TRUE(b.done());
    // the total cost does not depend on how the work was sliced
    SelectionTask c(values, k);
    c.step(UINT64_MAX);
    ASSERT_EQ(c.ops_spent(), a.ops_spent());
  }
}

TEST(SelectionTask, AdversarialShapesStayLinear) {
  std::vector<std::vector<Volume>> inputs;
  for (std::size_t n : {5u, 25u, 125u, 1000u, 4097u, 20000u}) {
    std::vector<Volume> asc(n), desc(n), equal(n, 42), organ(n);
    for (std::size_t i = 0; i < n; ++i) {
      asc[i] = i;
      desc[i] = n - i;
      organ[i] = std::min(i, n - i);
    }
    inputs.insert(inputs.end(), {asc, desc, equal, organ});
  }
  for (const auto& v : inputs) {
    for (std::size_t k : {std::size_t{1}, v.size() / 2 + 1, v.size()}) {
      SelectionTask t(v, k);
      t.step(UINT64_MAX);
      EXPECT_EQ(t.result(), sort_oracle(v, k));
      EXPECT_LE(t.ops_spent(), dimsum::kSelectionOpFactor * v.size()) << "n=" << v.size() << " k=" << k;
    }
  }
}
