#include <doctest.h>

#include <random>

#include "proxknap/errors.hpp"
#include "proxknap/oracles.hpp"
#include "proxknap/subset_sum.hpp"
#include "support.hpp"

using namespace proxknap;
using Values = std::vector<std::int64_t>;

namespace {

Values sorted(Values v) {
  std::sort(v.begin(), v.end());
  return v;
}

Values exponent_values(const std::vector<int>& e) {
  Values out;
  for (auto a : e) out.push_back(std::int64_t{1} << a);
  return out;
}

}  // namespace

TEST_CASE("reduction around the greedy prefix") {
  auto r = reduce_subset_sum({10, {3, 5, 7}});
  CHECK(r.prefix_sum == 8);
  CHECK(r.target == 2);
  CHECK(sorted(r.z) == Values{-5, -3, 7});
  r = reduce_subset_sum({7, {6, 6}});
  CHECK(r.prefix_sum == 6);
  CHECK(r.target == 1);
  CHECK(sorted(r.z) == Values{-6, 6});
  CHECK_THROWS_AS(reduce_subset_sum({4, {4}}), ContractViolation);
}

TEST_CASE("reduction caps copies of one value") {
  SubsetSumInstance s{20, Values(30, 1)};
  s.elements.push_back(3);
  const auto r = reduce_subset_sum(s);
  CHECK(std::count(r.z.begin(), r.z.end(), -1) == 6);
  CHECK(std::count(r.z.begin(), r.z.end(), 1) == 6);
}

TEST_CASE("bundle exponents") {
  CHECK(exponent_values(bundle_exponents(5)) == Values{1, 2, 2});
  CHECK(exponent_values(bundle_exponents(1)) == Values{1});
  CHECK(exponent_values(bundle_exponents(3)) == Values{1, 2});
  CHECK(bundle_exponents(0).empty());
}

TEST_CASE("bundled layers") {
  const Values z{3, 3, 3, -2};
  const auto layers = binary_bundle(z, 3);
  CHECK(layers.top() == 2);
  CHECK(sorted(layers.layers[0]) == Values{-2, 3});
  CHECK(layers.layers[1] == Values{3});
  CHECK(layers.layers[2].empty());
  const Values bad{4};
  CHECK_THROWS_AS(binary_bundle(bad, 3), ContractViolation);
}

TEST_CASE("layered sums by hand") {
  const Values z{3, -2};
  LayeredSumsOptions o;
  o.c = 1;
  const auto r = layered_sums(binary_bundle(z, 3), o);
  CHECK(r.s0.values() == Values{-2, 0, 1, 3});

  const auto empty = layered_sums(binary_bundle({}, 1));
  CHECK(empty.s0.values() == Values{0});
  const Values one{1};
  const auto single = layered_sums(binary_bundle(one, 1));
  CHECK(single.s0.contains(0));
  CHECK(single.s0.contains(1));
}

TEST_CASE("subset sum examples") {
  auto r = solve_subset_sum({10, {3, 5, 7}});
  CHECK(r.value == 10);
  CHECK(r.exact);
  r = solve_subset_sum({4, {3, 5, 7}});
  CHECK(r.value == 3);
  CHECK_FALSE(r.exact);
  r = solve_subset_sum({5, {2, 2}});
  CHECK(r.value == 4);
  CHECK_FALSE(r.exact);
  CHECK(r.trivial);
  r = solve_subset_sum({0, {}});
  CHECK(r.value == 0);
  CHECK(r.exact);
}

TEST_CASE("subset sum matches the bitset oracle") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = testing::random_subset_sum(rng, 60, 40, 1200);
    CAPTURE(serialize_instance(s));
    const auto sums = oracle::bitset_subset_sums(s.elements, s.target);
    const auto best = sums.values().back();
    SubsetSumOptions o;
    o.paranoid = trial % 5 == 0;
    const auto got = solve_subset_sum(s, o);
    REQUIRE(got.value == best);
    REQUIRE(got.exact == (best == s.target));
    CHECK_FALSE(got.paranoid_mismatch);
  }
}

TEST_CASE("randomized mode matches the bitset oracle") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = testing::random_subset_sum(rng, 60, 40, 1200);
    SubsetSumOptions o;
    o.mode = SubsetSumMode::kRandomized;
    o.seed = 1 + static_cast<std::uint64_t>(trial);
    const auto sums = oracle::bitset_subset_sums(s.elements, s.target);
    REQUIRE(solve_subset_sum(s, o).value == sums.values().back());
  }
}

TEST_CASE("every intermediate set is attainable") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = testing::random_subset_sum(rng, 25, 12, 150);
    std::erase_if(s.elements, [&](auto e) { return e > s.target; });
    std::int64_t total = 0;
    for (auto e : s.elements) total += e;
    if (total <= s.target) continue;
    const auto layers = binary_bundle(reduce_subset_sum(s).z, s.max_element());
    LayeredSumsOptions o;
    o.keep_trace = true;
    const auto r = layered_sums(layers, o);
    for (int beta = 0; beta <= layers.top(); ++beta) {
      Values scaled;
      for (int b = beta; b <= layers.top(); ++b)
        for (auto v : layers.layers[static_cast<std::size_t>(b)]) scaled.push_back(v << b);
      const auto attainable = oracle::signed_subset_sums(scaled);
      for (auto v : r.trace[static_cast<std::size_t>(beta)].values())
        REQUIRE(attainable.contains(v << beta));
    }
  }
}
