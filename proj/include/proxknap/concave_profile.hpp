#pragma once

#include <cstdint>
#include <vector>

#include "proxknap/adjusted_profit.hpp"

namespace proxknap {

/// Strictly concave P with P(0) = 0, given by its increments
/// d_1 > d_2 > ... > d_k. Past k the increments continue as
/// d_x = -(M + x + shift), which keeps P strictly concave and makes any count
/// beyond k lose to every legal one. Evaluation is O(1).
class ConcaveProfile {
 public:
  ConcaveProfile() = default;
  /// `increments` must be strictly decreasing; `penalty` must exceed the
  /// magnitude of every increment.
  ConcaveProfile(std::vector<AdjustedProfit> increments, int128 penalty,
                 std::int64_t shift = 0);

  /// P(x) for x >= 0.
  AdjustedProfit operator()(std::int64_t x) const;
  /// d_x = P(x) - P(x - 1) for x >= 1.
  AdjustedProfit increment(std::int64_t x) const;

  /// Number of legal (non-penalty) units.
  std::int64_t legal() const { return static_cast<std::int64_t>(increments_.size()); }
  int128 penalty() const { return penalty_; }
  std::int64_t shift() const { return shift_; }

  /// x -> P(x + 1) - P(1).
  ConcaveProfile shifted() const;

 private:
  std::vector<AdjustedProfit> increments_;
  std::vector<AdjustedProfit> prefix_;  // prefix_[x] = P(x), x <= k
  int128 penalty_ = 1;
  std::int64_t shift_ = 0;
};

}  // namespace proxknap
