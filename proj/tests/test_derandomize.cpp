#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "proxknap/derandomize.hpp"
#include "support.hpp"

using namespace proxknap;

namespace {

SetSystem random_system(std::mt19937_64& rng, std::size_t universe, std::size_t sets,
                        std::size_t max_size) {
  SetSystem s;
  s.universe = universe;
  std::vector<std::size_t> all(universe);
  for (std::size_t j = 0; j < universe; ++j) all[j] = j;
  for (std::size_t i = 0; i < sets; ++i) {
    std::shuffle(all.begin(), all.end(), rng);
    const auto size = static_cast<std::size_t>(
        testing::uniform(rng, 0, static_cast<std::int64_t>(std::min(max_size, universe))));
    s.sets.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return s;
}

}  // namespace

TEST_CASE("set balancing small cases") {
  SetSystem one{1, {{0}}};
  auto x = set_balancing(one);
  CHECK(std::abs(x[0]) == 1);

  SetSystem pair{2, {{0, 1}}};
  x = set_balancing(pair);
  CHECK(x[0] + x[1] == 0);

  SetSystem empty{3, {}};
  CHECK(set_balancing(empty) == std::vector<int>{1, 1, 1});
  CHECK(discrepancy_bound(1, 1) == doctest::Approx(2 * std::sqrt(std::log(2.0))));
}

TEST_CASE("set balancing meets the discrepancy bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto system = random_system(rng, static_cast<std::size_t>(testing::uniform(rng, 1, 60)),
                                      static_cast<std::size_t>(testing::uniform(rng, 1, 30)), 60);
    const auto x = set_balancing(system);
    REQUIRE(x.size() == system.universe);
    for (const auto& s : system.sets) {
      long sum = 0;
      for (auto j : s) sum += x[j];
      REQUIRE(std::abs(sum) <= discrepancy_bound(s.size(), system.sets.size()) + 1e-9);
    }
  }
}

TEST_CASE("halving recurrence") {
  CHECK(halving_bound(16, 2, 1) == doctest::Approx(8 + std::sqrt(16 * std::log(4.0))));
  CHECK(halving_bound(16, 2, 0) == doctest::Approx(16));
  CHECK(log_sets(1) == 1);
  CHECK(log_sets(8) == doctest::Approx(3));
}

TEST_CASE("balls and bins") {
  SetSystem s{4, {{2}}};
  auto c = balls_and_bins(s, 1);
  CHECK(c.colors == 1);
  CHECK(c.color == std::vector<std::size_t>(4, 0));

  SetSystem single{1, {{0}}};
  c = balls_and_bins(single, 2);
  CHECK(c.colors == 2);
  CHECK(c.bound >= 1);

  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 8));
    const auto m = static_cast<std::size_t>(testing::uniform(rng, 1, 20));
    const auto cap = static_cast<std::size_t>(std::floor(static_cast<double>(r) * log_sets(m)));
    const auto system = random_system(rng, 80, m, cap);
    const auto coloring = balls_and_bins(system, r);
    REQUIRE(coloring.colors == r);
    for (const auto& set : system.sets) {
      std::vector<std::size_t> per(r, 0);
      for (auto j : set) ++per[coloring.color[j]];
      for (auto k : per) REQUIRE(static_cast<double>(k) <= coloring.bound + 1e-9);
    }
  }
}

TEST_CASE("irreducible polynomials") {
  CHECK(irreducible_polynomial(1) == 0b10);
  CHECK(irreducible_polynomial(2) == 0b111);
  CHECK(irreducible_polynomial(8) == 0x11B);
  CHECK(is_irreducible(0x11B));
  CHECK_FALSE(is_irreducible(0b101));  // (x + 1)^2
  for (int d = 1; d <= 62; ++d) REQUIRE(is_irreducible(irreducible_polynomial(d)));
  CHECK(gf2_mulmod(0x53, 0xCA, 0x11B) == 1);
}

TEST_CASE("pairwise hash is deterministic and pairwise independent") {
  const auto h1 = PairwiseHash::sample(16, 4, 77);
  const auto h2 = PairwiseHash::sample(16, 4, 77);
  for (std::uint64_t x = 0; x < 16; ++x) CHECK(h1(x) == h2(x));

  const std::uint64_t n = 8, m = 4;
  for (std::uint64_t x1 = 0; x1 < n; ++x1)
    for (std::uint64_t x2 = 0; x2 < n; ++x2) {
      if (x1 == x2) continue;
      std::vector<int> hits(m * m, 0);
      for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < m; ++b) {
          const auto h = PairwiseHash::with(n, m, a, b);
          ++hits[h(x1) * m + h(x2)];
        }
      for (auto k : hits) REQUIRE(k == static_cast<int>(n * m / (m * m)));
    }
}

TEST_CASE("isolating colorings") {
  std::vector<std::vector<std::uint64_t>> singletons{{0}, {5}, {9}};
  auto f = isolating_colorings(singletons, 10, 1);
  CHECK(f.colorings.size() == 1);
  CHECK(f.first == std::vector<std::size_t>{0, 0, 0});

  std::vector<std::vector<std::uint64_t>> pair{{1, 2}};
  f = isolating_colorings(pair, 3, 2);
  REQUIRE(f.colorings.size() == 1);
  CHECK(f.colorings[0](1) != f.colorings[0](2));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = static_cast<std::size_t>(testing::uniform(rng, 1, 6));
    const std::uint64_t universe = static_cast<std::uint64_t>(testing::uniform(rng, 1, 300));
    std::vector<std::vector<std::uint64_t>> sets;
    for (auto k = testing::uniform(rng, 1, 40); k > 0; --k) {
      std::set<std::uint64_t> s;
      const auto size = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(b)));
      while (s.size() < std::min<std::size_t>(size, universe))
        s.insert(static_cast<std::uint64_t>(testing::uniform(rng, 0, static_cast<std::int64_t>(universe) - 1)));
      sets.emplace_back(s.begin(), s.end());
    }
    const auto family = isolating_colorings(sets, universe, b);
    REQUIRE(family.colors >= b * b);
    REQUIRE(family.colorings.size() <= 2 + 2 * static_cast<std::size_t>(std::log2(sets.size() + 1)));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto& h = family.colorings.at(family.first[i]);
      std::set<std::uint64_t> colors;
      for (auto x : sets[i]) colors.insert(h(x));
      REQUIRE(colors.size() == sets[i].size());
      for (auto c : colors) REQUIRE(c < family.colors);
    }
  }
}
