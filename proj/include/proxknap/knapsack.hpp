#pragma once

// 0-1 knapsack through proximity to the greedy prefix: the optimum differs
// from the prefix in few items of few distinct weights, so it is found by
// extending small base solutions along weights they already use.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxknap/adjusted_profit.hpp"
#include "proxknap/concave_profile.hpp"
#include "proxknap/instance.hpp"
#include "proxknap/weak_extend.hpp"

namespace proxknap {

/// Instance whose profits carry the tie-breaking pair (p_i, i * w_max + 1).
struct TieBrokenInstance {
  KnapsackInstance instance;
  std::vector<AdjustedProfit> profit;  // aligned with instance.items
  std::int64_t w_max = 0;
};

TieBrokenInstance break_ties(const KnapsackInstance& instance);

/// True when item a is strictly more efficient than item b.
bool more_efficient(const TieBrokenInstance& instance, std::size_t a,
                    std::size_t b);

struct PrefixSolution {
  std::vector<std::size_t> order;  // 0-based items, decreasing efficiency
  std::size_t length = 0;          // order[0..length) is the prefix
  std::int64_t weight = 0;
  std::int64_t residual = 0;       // t - weight
  AdjustedProfit profit;
};

/// Greedy prefix in decreasing efficiency; stops at the first item that does
/// not fit.
PrefixSolution maximal_prefix(const TieBrokenInstance& instance);

/// One signed weight of the proximity instance: +w adds items of weight w
/// from outside the prefix, -w removes prefix items of weight w.
struct ProximityKey {
  std::int64_t weight = 0;
  ConcaveProfile profile;
  /// 0-based items in the order the profile uses them.
  std::vector<std::size_t> items;
};

struct ProximityInstance {
  std::vector<ProximityKey> keys;  // positive keys ascending, then negative
  std::size_t positive = 0;        // keys[0..positive) are positive
  std::int64_t residual = 0;
  std::int64_t w_max = 0;
  std::int64_t b0 = 0;
  std::int64_t b1 = 0;
  int128 penalty = 0;
  PrefixSolution prefix;
};

std::int64_t proximity_b0(std::int64_t w_max, double c);

ProximityInstance build_proximity_instance(const TieBrokenInstance& instance,
                                           const PrefixSolution& prefix,
                                           double c);

/// 0/1 solutions over the keys with weight i for i in [-b0 w_max, b0 w_max].
struct BaseSolutions {
  std::int64_t radius = 0;  // b0 * w_max
  std::vector<AdjustedProfit> value;  // bottom where erased or unreachable
  /// Key positions used by each entry, ascending.
  std::vector<std::vector<std::uint32_t>> support;

  std::size_t size() const { return value.size(); }
  std::int64_t coordinate(std::size_t slot) const {
    return static_cast<std::int64_t>(slot) - radius;
  }
};

/// Same DP, without erasing entries of large support.
BaseSolutions base_solution_table(const ProximityInstance& prox);
BaseSolutions prepare_base_solutions(const ProximityInstance& prox);

struct ProximityResult {
  AdjustedProfit value;  // gain over the prefix
  SolutionVector counts;
  WeakExtendStats stats;
};

ProximityResult solve_proximity(const ProximityInstance& prox);

enum class KnapsackAlgorithm { kAuto, kProximity, kBellman };

struct KnapsackOptions {
  double proximity_c = 4.0;
  KnapsackAlgorithm algorithm = KnapsackAlgorithm::kAuto;
  /// kAuto falls back to Bellman when b0 w_max (|W| + b1) >= factor * n t.
  double fallback_factor = 1.0;
  /// Largest DP window 2 b1 w_max + 1 the proximity solver accepts.
  std::int64_t max_window = std::int64_t{1} << 21;
};

struct KnapsackResult {
  std::int64_t value = 0;
  ItemSelection selection;  // 1-based indices into the input instance
  std::string algorithm;    // "trivial", "proximity" or "bellman"
  WeakExtendStats stats;
};

KnapsackResult solve_01_knapsack(const KnapsackInstance& instance,
                                 const KnapsackOptions& options = {});

}  // namespace proxknap
