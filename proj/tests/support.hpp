#pragma once

// Shared generators and reference computations for the test binaries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "proxknap/instance.hpp"
#include "proxknap/matrix_view.hpp"
#include "proxknap/weak_extend.hpp"

namespace proxknap::testing {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random knapsack instance; `dense` draws all weights from 2 or 3 values.
inline KnapsackInstance random_knapsack(std::mt19937_64& rng, std::int64_t n_max,
                                        std::int64_t w_max, std::int64_t t_max,
                                        bool dense = false, std::int64_t p_max = 100) {
  KnapsackInstance out;
  const auto n = uniform(rng, 0, n_max);
  const auto w = uniform(rng, 1, w_max);
  std::vector<std::int64_t> palette;
  for (std::int64_t k = uniform(rng, 2, 3); k > 0; --k) palette.push_back(uniform(rng, 1, w));
  for (std::int64_t i = 0; i < n; ++i) {
    Item item;
    item.weight = dense ? palette[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(palette.size()) - 1))]
                        : uniform(rng, 1, w);
    // Dense instances keep profits near a common efficiency.
    item.profit = dense ? std::max<std::int64_t>(0, 3 * item.weight + uniform(rng, -2, 2))
                        : uniform(rng, 0, p_max);
    out.items.push_back(item);
  }
  // Capacities beyond the total weight would make the instance trivial.
  std::int64_t total = 0;
  for (const auto& item : out.items) total += item.weight;
  out.capacity = uniform(rng, 0, std::min(t_max, total));
  return out;
}

inline SubsetSumInstance random_subset_sum(std::mt19937_64& rng, std::int64_t n_max,
                                           std::int64_t w_max, std::int64_t t_max) {
  SubsetSumInstance out;
  const auto n = uniform(rng, 0, n_max);
  const auto w = uniform(rng, 1, w_max);
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    out.elements.push_back(uniform(rng, 1, w));
    total += out.elements.back();
  }
  out.target = uniform(rng, 0, std::min(t_max, total));
  return out;
}

/// Strictly concave profile with up to `legal_max` legal units.
inline ConcaveProfile random_profile(std::mt19937_64& rng, std::int64_t legal_max) {
  std::vector<AdjustedProfit> inc;
  std::int64_t d = uniform(rng, -5, 40);
  for (auto k = uniform(rng, 0, legal_max); k > 0; --k) {
    inc.emplace_back(d, uniform(rng, -3, 3));
    d -= uniform(rng, 1, 8);
  }
  return ConcaveProfile(std::move(inc), 1000);
}

/// Owns everything a WeakExtendInstance points to.
struct WeakFixture {
  KeyTable keys;
  SetFamily family;
  WitnessPool pool;
  WeakExtendInstance instance;

  WeakFixture() = default;
  WeakFixture(const WeakFixture&) = delete;
  WeakFixture& operator=(const WeakFixture&) = delete;

  void bind() {
    instance.keys = &keys;
    instance.family = &family;
    instance.pool = &pool;
  }
};

/// Random instance with L <= max_len, |U| <= max_keys and |S[i]| <= b.
inline void random_weak_instance(std::mt19937_64& rng, WeakFixture& f, std::int64_t max_len,
                                 std::int64_t max_keys, std::size_t b, std::int64_t max_step = 6) {
  f.bind();
  const auto key_count = uniform(rng, 0, max_keys);
  std::vector<std::int64_t> steps;
  for (std::int64_t k = 0; k < key_count; ++k) {
    // Distinct steps keep keys distinguishable but are not required.
    steps.push_back(uniform(rng, 1, max_step));
    f.instance.universe.push_back(f.keys.add(steps.back(), random_profile(rng, 4)));
  }
  const auto length = static_cast<std::size_t>(uniform(rng, 1, max_len));
  std::vector<AdjustedProfit> q(length);
  std::vector<std::uint32_t> handles(length, SetFamily::kEmpty);
  for (std::size_t i = 0; i < length; ++i) {
    q[i] = uniform(rng, 0, 3) == 0 ? AdjustedProfit::bottom()
                                   : AdjustedProfit(uniform(rng, -20, 60), uniform(rng, -5, 5));
    std::vector<KeyId> set;
    const auto size = uniform(rng, 0, std::min<std::int64_t>(static_cast<std::int64_t>(b), key_count));
    std::vector<KeyId> pool(f.instance.universe);
    std::shuffle(pool.begin(), pool.end(), rng);
    set.assign(pool.begin(), pool.begin() + size);
    std::sort(set.begin(), set.end());
    if (!set.empty()) handles[i] = f.family.add(set);
  }
  f.instance.state = WeakState::initial(std::move(q), std::move(handles));
}

/// Exact optimum of every index together with the best value among
/// solutions that use a key outside S[z] (bottom when there is none).
struct WeakReference {
  std::vector<AdjustedProfit> best;
  std::vector<AdjustedProfit> best_violating;

  /// The instance only has to be solved where no maximizer violates.
  bool obliged(std::size_t i) const { return best_violating[i] < best[i]; }
};

inline WeakReference weak_reference(const WeakExtendInstance& instance) {
  const auto length = instance.length();
  WeakReference out;
  out.best.assign(length, AdjustedProfit::bottom());
  out.best_violating.assign(length, AdjustedProfit::bottom());
  const auto& keys = *instance.keys;
  for (std::size_t z = 0; z < length; ++z) {
    const auto qz = instance.state.value[z];
    if (qz.is_bottom()) continue;
    const auto set = instance.set_at(z);
    const auto span = length - z;
    // f[flag][d]: best sum of gains with total step d; flag = a key outside S[z] used.
    std::vector<std::vector<AdjustedProfit>> f(2, std::vector<AdjustedProfit>(span, AdjustedProfit::bottom()));
    f[0][0] = AdjustedProfit::zero();
    for (auto key : instance.universe) {
      const bool inside = std::binary_search(set.begin(), set.end(), key);
      const auto w = keys.step[key];
      auto g = f;
      for (int flag = 0; flag < 2; ++flag)
        for (std::size_t d = 0; d < span; ++d) {
          if (f[flag][d].is_bottom()) continue;
          for (std::int64_t x = 1; d + static_cast<std::size_t>(x * w) < span; ++x) {
            const auto nd = d + static_cast<std::size_t>(x * w);
            const int nf = flag | (inside ? 0 : 1);
            g[nf][nd] = std::max(g[nf][nd], f[flag][d] + keys.gain[key](x));
          }
        }
      f = std::move(g);
    }
    for (std::size_t d = 0; d < span; ++d) {
      const auto good = f[0][d].is_bottom() ? f[0][d] : qz + f[0][d];
      const auto bad = f[1][d].is_bottom() ? f[1][d] : qz + f[1][d];
      out.best[z + d] = std::max({out.best[z + d], good, bad});
      out.best_violating[z + d] = std::max(out.best_violating[z + d], bad);
    }
  }
  return out;
}

}  // namespace proxknap::testing


namespace proxknap::testing {

/// Dense convex Monge matrix whose finite entries form a reverse falling
/// staircase. Small increments make ties frequent.
struct MongeTable {
  std::size_t rows = 0, cols = 0;
  std::vector<AdjustedProfit> cells;

  AdjustedProfit operator()(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

  StaircaseMatrixView view() const {
    return {rows, cols, [this](std::size_t i, std::size_t j) { return (*this)(i, j); }};
  }
};

inline MongeTable random_monge(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               bool full_rows = false) {
  MongeTable t{rows, cols, std::vector<AdjustedProfit>(rows * cols)};
  std::vector<std::int64_t> a(rows * cols);
  const auto spread = uniform(rng, 0, 6);
  for (std::size_t j = 0; j < cols; ++j) a[j] = uniform(rng, -spread, spread) + (j ? a[j - 1] : 0);
  for (std::size_t i = 1; i < rows; ++i) {
    a[i * cols] = a[(i - 1) * cols] + uniform(rng, -spread, spread);
    for (std::size_t j = 1; j < cols; ++j)
      a[i * cols + j] = a[(i - 1) * cols + j] + a[i * cols + j - 1] - a[(i - 1) * cols + j - 1] +
                        (uniform(rng, 0, 2) == 0 ? uniform(rng, 0, 3) : 0);
  }
  // Row lengths are non-decreasing.
  std::vector<std::size_t> len(rows);
  std::size_t current = full_rows ? cols : static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(cols)));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!full_rows && uniform(rng, 0, 3) == 0)
      current = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(current), static_cast<std::int64_t>(cols)));
    len[i] = current;
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      t.cells[i * cols + j] = j < len[i] ? AdjustedProfit(a[i * cols + j], 0) : AdjustedProfit::bottom();
  return t;
}

}  // namespace proxknap::testing
