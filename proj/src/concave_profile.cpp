#include "proxknap/concave_profile.hpp"

#include "proxknap/errors.hpp"

namespace proxknap {

ConcaveProfile::ConcaveProfile(std::vector<AdjustedProfit> increments,
                               int128 penalty, std::int64_t shift)
    : increments_(std::move(increments)), penalty_(penalty), shift_(shift) {
  prefix_.reserve(increments_.size() + 1);
  prefix_.push_back(AdjustedProfit::zero());
  for (std::size_t x = 0; x < increments_.size(); ++x) {
    if (x > 0 && !(increments_[x] < increments_[x - 1]))
      throw ContractViolation("profile increments must strictly decrease");
    const auto m = increments_[x].main();
    if (m >= penalty_ || -m >= penalty_)
      throw ContractViolation("penalty must exceed every increment");
    prefix_.push_back(prefix_.back() + increments_[x]);
  }
  if (!increments_.empty() && -increments_.back().main() >= penalty_ + legal() + 1 + shift_)
    throw ContractViolation("penalty too small for the profile");
}

AdjustedProfit ConcaveProfile::operator()(std::int64_t x) const {
  const auto k = legal();
  if (x <= k) return prefix_[static_cast<std::size_t>(x)];
  const int128 extra = x - k;
  // sum_{y=k+1}^{x} (M + y + shift)
  const int128 ys = (static_cast<int128>(x) * (x + 1) - static_cast<int128>(k) * (k + 1)) / 2;
  return prefix_.back() + AdjustedProfit(-(extra * penalty_ + ys + extra * shift_), 0);
}

AdjustedProfit ConcaveProfile::increment(std::int64_t x) const {
  if (x <= legal()) return increments_[static_cast<std::size_t>(x - 1)];
  return AdjustedProfit(-(penalty_ + x + shift_), 0);
}

ConcaveProfile ConcaveProfile::shifted() const {
  std::vector<AdjustedProfit> rest;
  if (increments_.size() > 1) rest.assign(increments_.begin() + 1, increments_.end());
  return ConcaveProfile(std::move(rest), penalty_, shift_ + 1);
}

}  // namespace proxknap
