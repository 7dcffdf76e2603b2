#include <doctest.h>

#include <random>

#include "proxknap/errors.hpp"
#include "proxknap/knapsack.hpp"
#include "proxknap/oracles.hpp"
#include "support.hpp"

using namespace proxknap;

namespace {

AdjustedProfit val(std::int64_t v) { return {v, 0}; }

ItemSelection prefix_selection(const PrefixSolution& p) {
  ItemSelection s;
  for (std::size_t k = 0; k < p.length; ++k) s.push_back(p.order[k] + 1);
  std::sort(s.begin(), s.end());
  return s;
}

ProximityInstance single_key(std::vector<AdjustedProfit> increments, std::int64_t residual) {
  ProximityInstance prox;
  prox.w_max = 2;
  prox.b0 = 1;
  prox.b1 = 2;
  prox.penalty = 1000;
  prox.residual = residual;
  prox.keys.push_back(ProximityKey{2, ConcaveProfile(std::move(increments), prox.penalty), {}});
  prox.positive = 1;
  return prox;
}

}  // namespace

TEST_CASE("tie breaking pairs") {
  const auto tb = break_ties({4, {{2, 3}, {3, 4}}});
  CHECK(tb.w_max == 3);
  CHECK(tb.profit[0] == AdjustedProfit(3, 4));
  CHECK(tb.profit[1] == AdjustedProfit(4, 7));
  CHECK(more_efficient(tb, 0, 1));
  CHECK_FALSE(more_efficient(tb, 1, 0));
  // Equal efficiency is broken by the index component.
  const auto same = break_ties({10, {{2, 4}, {1, 2}}});
  CHECK(more_efficient(same, 0, 1) != more_efficient(same, 1, 0));
}

TEST_CASE("maximal prefix") {
  auto p = maximal_prefix(break_ties({4, {{2, 3}, {3, 4}}}));
  CHECK(p.order == std::vector<std::size_t>{0, 1});
  CHECK(p.length == 1);
  CHECK(p.residual == 2);
  p = maximal_prefix(break_ties({6, {{5, 1}, {2, 9}}}));
  CHECK(p.order == std::vector<std::size_t>{1, 0});
  CHECK(p.length == 1);
  CHECK(p.residual == 4);
  p = maximal_prefix(break_ties({3, {{2, 3}}}));
  CHECK(p.length == 1);
  CHECK(p.residual == 1);
  CHECK(p.profit.main() == 3);
}

TEST_CASE("proximity instance keys") {
  // Items 3 and 4 (weight 5) stay outside the prefix.
  const KnapsackInstance k{6, {{3, 30}, {3, 29}, {5, 9}, {5, 7}}};
  const auto tb = break_ties(k);
  const auto prefix = maximal_prefix(tb);
  CHECK(prefix.length == 2);
  const auto prox = build_proximity_instance(tb, prefix, 4);
  REQUIRE(prox.positive == 1);
  CHECK(prox.keys[0].weight == 5);
  CHECK(prox.keys[0].profile(1).main() == 9);
  CHECK(prox.keys[0].profile(2).main() == 16);
  CHECK(prox.keys[0].profile(3).main() < 0);
  REQUIRE(prox.keys.size() == 2);
  CHECK(prox.keys[1].weight == -3);
  CHECK(prox.keys[1].profile(1).main() == -29);
  CHECK(prox.b1 == 4);

  const KnapsackInstance all{100, {{3, 30}, {4, 29}}};
  const auto tb2 = break_ties(all);
  const auto prox2 = build_proximity_instance(tb2, maximal_prefix(tb2), 4);
  CHECK(prox2.positive == 0);
  for (const auto& key : prox2.keys) CHECK(key.weight < 0);
}

TEST_CASE("base solutions") {
  const auto prox = single_key({val(7)}, 0);
  const auto base = prepare_base_solutions(prox);
  REQUIRE(base.size() == 5);
  for (std::size_t slot = 0; slot < base.size(); ++slot) {
    const auto x = base.coordinate(slot);
    CAPTURE(x);
    if (x == 0) {
      CHECK(base.value[slot] == val(0));
      CHECK(base.support[slot].empty());
    } else if (x == 2) {
      CHECK(base.value[slot] == val(7));
      CHECK(base.support[slot] == std::vector<std::uint32_t>{0});
    } else {
      CHECK(base.value[slot].is_bottom());
    }
  }
  ProximityInstance empty = prox;
  empty.keys.clear();
  empty.positive = 0;
  const auto e = prepare_base_solutions(empty);
  for (std::size_t slot = 0; slot < e.size(); ++slot)
    CHECK(e.value[slot].is_bottom() == (e.coordinate(slot) != 0));
}

TEST_CASE("solve proximity on one key") {
  const auto r = solve_proximity(single_key({val(7), val(5)}, 5));
  CHECK(r.value == val(12));
  CHECK(r.counts.count(2) == 2);
  CHECK(r.counts.l0() == 1);
  const auto none = solve_proximity(single_key({val(7), val(5)}, 0));
  CHECK(none.value == val(0));
  CHECK(none.counts.l0() == 0);
}

TEST_CASE("knapsack examples") {
  for (auto algo : {KnapsackAlgorithm::kAuto, KnapsackAlgorithm::kProximity, KnapsackAlgorithm::kBellman}) {
    KnapsackOptions o;
    o.algorithm = algo;
    auto r = solve_01_knapsack({4, {{2, 3}, {3, 4}}}, o);
    CHECK(r.value == 4);
    CHECK(r.selection == ItemSelection{2});
    r = solve_01_knapsack({5, {{2, 3}, {3, 4}}}, o);
    CHECK(r.value == 7);
    CHECK(r.selection == ItemSelection{1, 2});
    r = solve_01_knapsack({50, {{2, 3}, {3, 4}, {60, 1000}}}, o);
    CHECK(r.algorithm == "trivial");
    CHECK(r.value == 7);
    CHECK(r.selection == ItemSelection{1, 2});
  }
  CHECK_THROWS_AS(solve_01_knapsack({3, {{0, 1}}}), MalformedInput);
}

TEST_CASE("proximity matches brute force on random instances") {
  std::mt19937_64 rng(41);
  KnapsackOptions o;
  o.algorithm = KnapsackAlgorithm::kProximity;
  for (int trial = 0; trial < 500; ++trial) {
    const auto k = testing::random_knapsack(rng, 12, 20, 120, trial % 3 == 0);
    CAPTURE(serialize_instance(k));
    const auto expect = oracle::brute_force_knapsack(k);
    const auto got = solve_01_knapsack(k, o);
    REQUIRE(got.value == expect.value);
    REQUIRE(selection_profit(k, got.selection) == got.value);
    REQUIRE(selection_weight(k, got.selection) <= k.capacity);
    REQUIRE(std::is_sorted(got.selection.begin(), got.selection.end()));
  }
}

TEST_CASE("proximity matches Bellman on larger instances") {
  std::mt19937_64 rng(42);
  KnapsackOptions o;
  o.algorithm = KnapsackAlgorithm::kProximity;
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = testing::random_knapsack(rng, 120, 40, 2000, trial % 4 == 0, 1000);
    CAPTURE(serialize_instance(k));
    REQUIRE(solve_01_knapsack(k, o).value == oracle::bellman_dp(k).opt.back());
  }
}

TEST_CASE("returned solutions stay close to the prefix") {
  std::mt19937_64 rng(43);
  KnapsackOptions o;
  o.algorithm = KnapsackAlgorithm::kProximity;
  for (int trial = 0; trial < 300; ++trial) {
    const auto raw = testing::random_knapsack(rng, 40, 25, 500, trial % 2 == 0);
    const auto k = validate(raw).instance;
    const auto got = solve_01_knapsack(k, o);
    const auto prefix = maximal_prefix(break_ties(k));
    const auto d = oracle::proximity_check(prefix_selection(prefix), got.selection, k);
    REQUIRE(d.l1 <= 2 * k.max_weight());
    REQUIRE(static_cast<double>(d.l0) <= 2 * 4 * std::sqrt(static_cast<double>(k.max_weight())));
  }
}
