#include <doctest.h>

#include <random>

#include "proxknap/errors.hpp"
#include "proxknap/weak_extend.hpp"
#include "support.hpp"

using namespace proxknap;
using testing::WeakFixture;

namespace {

AdjustedProfit val(std::int64_t v) { return {v, 0}; }
const AdjustedProfit kBottom = AdjustedProfit::bottom();

// Every reported value is attained by its witness and never beats the
// optimum; where the optimum is obliged it is matched.
void check_solution(const WeakExtendInstance& instance, const WeakState& after,
                    std::size_t* obliged_count = nullptr) {
  const auto reference = testing::weak_reference(instance);
  const auto sol = materialize(*instance.pool, instance.state, after);
  REQUIRE(sol.value.size() == instance.length());
  for (std::size_t i = 0; i < instance.length(); ++i) {
    CAPTURE(i);
    if (reference.obliged(i)) {
      REQUIRE(sol.value[i] == reference.best[i]);
      if (obliged_count) ++*obliged_count;
    }
    if (sol.value[i].is_bottom()) continue;
    REQUIRE(sol.value[i] <= reference.best[i]);
    const auto z = sol.source[i];
    REQUIRE(z >= 0);
    REQUIRE(static_cast<std::size_t>(z) <= i);
    std::int64_t reach = z;
    for (const auto& [key, count] : sol.counts[i]) {
      REQUIRE(count > 0);
      reach += instance.keys->step[key] * count;
    }
    REQUIRE(static_cast<std::size_t>(reach) == i);
    REQUIRE(evaluate(*instance.keys, instance.state.value[static_cast<std::size_t>(z)], sol.counts[i]) ==
            sol.value[i]);
  }
}

void worked_instance(WeakFixture& f) {
  f.bind();
  const auto key = f.keys.add(2, ConcaveProfile({val(5), val(3)}, 100));
  f.instance.universe = {key};
  const std::vector<KeyId> set{key};
  const auto h = f.family.add(set);
  f.instance.state = WeakState::initial({val(0), val(10), kBottom, kBottom, kBottom},
                                        {SetFamily::kEmpty, h, SetFamily::kEmpty,
                                         SetFamily::kEmpty, SetFamily::kEmpty});
}

}  // namespace

TEST_CASE("concave profiles") {
  const ConcaveProfile p({val(9), val(7)}, 100);
  CHECK(p(0) == val(0));
  CHECK(p(1) == val(9));
  CHECK(p(2) == val(16));
  CHECK(p.increment(3) < p.increment(2));
  CHECK(p(3) < p(2));
  const auto q = p.shifted();
  CHECK(q(0) == val(0));
  CHECK(q(1) == val(7));
  CHECK(q.legal() == 1);
  for (std::int64_t x = 1; x < 10; ++x) CHECK(q.increment(x + 1) < q.increment(x));
  CHECK_THROWS(ConcaveProfile({val(3), val(3)}, 100));
  CHECK_THROWS(ConcaveProfile({val(300)}, 100));
}

TEST_CASE("singleton extension on a small instance") {
  WeakFixture f;
  worked_instance(f);
  const auto r = singleton_extend(f.instance);
  CHECK(r.value == std::vector<AdjustedProfit>{val(0), val(10), kBottom, val(15), kBottom});
  CHECK(r.source[3] == 1);
  check_solution(f.instance, r);
}

TEST_CASE("empty sets give the trivial solution") {
  WeakFixture f;
  f.bind();
  f.instance.universe = {f.keys.add(1, ConcaveProfile({val(5)}, 100))};
  f.instance.state = WeakState::initial({val(1), val(2), kBottom, val(-4)}, {});
  for (const auto& r : {singleton_extend(f.instance), small_b_extend(f.instance, 3),
                        large_b_extend(f.instance, 3)}) {
    CHECK(r.value == f.instance.state.value);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.source[i] == static_cast<std::int64_t>(i));
  }
}

TEST_CASE("length one and empty universe") {
  WeakFixture f;
  worked_instance(f);
  f.instance.state = WeakState::initial({val(4)}, {});
  CHECK(singleton_extend(f.instance).value == std::vector<AdjustedProfit>{val(4)});
  f.instance.universe.clear();
  f.instance.state = WeakState::initial({val(4), val(1), val(0)}, {});
  CHECK(large_b_extend(f.instance, 5).value == f.instance.state.value);
}

TEST_CASE("singleton extension rejects larger sets") {
  WeakFixture f;
  f.bind();
  const auto a = f.keys.add(1, ConcaveProfile({val(5)}, 100));
  const auto b = f.keys.add(2, ConcaveProfile({val(5)}, 100));
  f.instance.universe = {a, b};
  const std::vector<KeyId> both{a, b};
  f.instance.state = WeakState::initial({val(0), val(0)}, {f.family.add(both), SetFamily::kEmpty});
  CHECK_THROWS_AS(singleton_extend(f.instance), ContractViolation);
}

TEST_CASE("composition with the identity") {
  WeakFixture f;
  worked_instance(f);
  const auto r = singleton_extend(f.instance);
  const auto y = materialize(f.pool, f.instance.state, r);
  ExplicitSolution identity;
  identity.value = f.instance.state.value;
  identity.counts.resize(f.instance.length());
  for (std::size_t i = 0; i < f.instance.length(); ++i)
    identity.source.push_back(static_cast<std::int64_t>(i));
  const auto c = compose_solutions(identity, y);
  CHECK(c.value == y.value);
  CHECK(c.source == y.source);
  CHECK(c.counts == y.counts);
}

TEST_CASE("max of an instance with itself") {
  std::mt19937_64 rng(31);
  WeakFixture f;
  testing::random_weak_instance(rng, f, 20, 4, 3);
  const auto m = max_instances(f.instance, f.instance);
  CHECK(m.state.value == f.instance.state.value);
  for (std::size_t i = 0; i < m.length(); ++i) CHECK(m.set_at(i) == f.instance.set_at(i));
  const auto r = singleton_extend(restrict_instance(f.instance, {}));
  CHECK(max_solutions(r, r).value == r.value);
}

TEST_CASE("restriction and update") {
  std::mt19937_64 rng(32);
  WeakFixture f;
  testing::random_weak_instance(rng, f, 20, 4, 3);
  std::vector<KeyId> v(f.instance.universe.begin(),
                       f.instance.universe.begin() + static_cast<std::ptrdiff_t>(f.instance.universe.size() / 2));
  const auto restricted = restrict_instance(f.instance, v);
  CHECK(restricted.universe == v);
  for (std::size_t i = 0; i < restricted.length(); ++i)
    for (auto k : restricted.set_at(i)) CHECK(std::find(v.begin(), v.end(), k) != v.end());
  const auto y = small_b_extend(restricted, 3);
  const auto updated = update_instance(f.instance, v, y);
  CHECK(updated.state.value == y.value);
  for (std::size_t i = 0; i < updated.length(); ++i)
    for (auto k : updated.set_at(i)) CHECK(std::find(v.begin(), v.end(), k) == v.end());
}

TEST_CASE("random singleton instances") {
  std::mt19937_64 rng(33);
  std::size_t obliged = 0;
  for (int trial = 0; trial < 300; ++trial) {
    WeakFixture f;
    testing::random_weak_instance(rng, f, 50, 5, 1);
    check_solution(f.instance, singleton_extend(f.instance), &obliged);
  }
  CHECK(obliged > 1000);
}

TEST_CASE("small b agrees with singleton extension when b is one") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    WeakFixture f;
    testing::random_weak_instance(rng, f, 40, 5, 1);
    CHECK(small_b_extend(f.instance, 1).value == singleton_extend(f.instance).value);
  }
}

TEST_CASE("random small b instances") {
  std::mt19937_64 rng(35);
  std::size_t obliged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    WeakFixture f;
    testing::random_weak_instance(rng, f, 40, 6, 2);
    check_solution(f.instance, small_b_extend(f.instance, 2), &obliged);
  }
  CHECK(obliged > 500);
}

TEST_CASE("random large b instances") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 150; ++trial) {
    WeakFixture f;
    const auto b = static_cast<std::size_t>(testing::uniform(rng, 1, 7));
    testing::random_weak_instance(rng, f, 40, 8, b);
    check_solution(f.instance, large_b_extend(f.instance, b));
  }
}

TEST_CASE("large b with b below log m is one small b call") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    WeakFixture f;
    testing::random_weak_instance(rng, f, 40, 6, 1);
    CHECK(large_b_extend(f.instance, 1).value == small_b_extend(f.instance, 1).value);
  }
}
