#include "proxknap/oracles.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "proxknap/errors.hpp"

namespace proxknap::oracle {

namespace {

// Lexicographic comparison of two index sets given as bitmasks (bit i is item
// i + 1), comparing their sorted element lists.
bool lex_smaller(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  auto diff = a ^ b;
  int d = std::countr_zero(diff);
  bool d_in_a = (a >> d) & 1u;
  std::uint32_t other = d_in_a ? b : a;
  bool other_continues = (static_cast<std::uint64_t>(other) >> (d + 1)) != 0;
  // The set holding d wins unless the other one ends right there.
  return d_in_a == other_continues;
}

}  // namespace

KnapsackAnswer brute_force_knapsack(const KnapsackInstance& instance) {
  const auto n = instance.items.size();
  if (n > kBruteForceMaxItems)
    throw LimitError("brute force is limited to 24 items");

  std::int64_t weight = 0;
  std::int64_t profit = 0;
  std::uint32_t mask = 0;
  std::int64_t best = 0;
  std::uint32_t best_mask = 0;
  // Gray-code walk: consecutive masks differ in exactly one item.
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    int bit = std::countr_zero(k);
    const auto& item = instance.items[bit];
    if ((mask >> bit) & 1u) {
      mask &= ~(1u << bit);
      weight -= item.weight;
      profit -= item.profit;
    } else {
      mask |= 1u << bit;
      weight += item.weight;
      profit += item.profit;
    }
    if (weight > instance.capacity) continue;
    if (profit > best || (profit == best && lex_smaller(mask, best_mask))) {
      best = profit;
      best_mask = mask;
    }
  }

  KnapsackAnswer out;
  out.value = best;
  for (std::size_t i = 0; i < n; ++i)
    if ((best_mask >> i) & 1u) out.selection.push_back(i + 1);
  return out;
}

CapacityProfile bellman_dp(const KnapsackInstance& instance,
                           const BellmanOptions& options) {
  const auto n = instance.items.size();
  const auto t = instance.capacity;
  if (t < 0) throw MalformedInput("negative capacity");
  const auto width = static_cast<std::uint64_t>(t) + 1;
  if (width > options.max_cells ||
      (options.with_selection && n > 0 && n * width > options.max_cells))
    throw BudgetExceeded("Bellman table exceeds the cell budget");

  CapacityProfile out;
  out.opt.assign(width, 0);
  std::vector<std::vector<bool>> keep;
  if (options.with_selection) keep.assign(n, std::vector<bool>(width, false));

  for (std::size_t i = 0; i < n; ++i) {
    const auto w = instance.items[i].weight;
    const auto p = instance.items[i].profit;
    if (w <= 0) throw MalformedInput("non-positive weight");
    for (std::int64_t c = t; c >= w; --c) {
      auto candidate = out.opt[c - w] + p;
      if (candidate > out.opt[c]) {
        out.opt[c] = candidate;
        if (options.with_selection) keep[i][c] = true;
      }
    }
  }

  if (options.with_selection) {
    ItemSelection chosen;
    std::int64_t c = t;
    for (std::size_t i = n; i-- > 0;) {
      if (keep[i][c]) {
        chosen.push_back(i + 1);
        c -= instance.items[i].weight;
      }
    }
    std::reverse(chosen.begin(), chosen.end());
    out.selection = std::move(chosen);
  }
  return out;
}

SumBitmap::SumBitmap(std::int64_t offset, std::int64_t length)
    : offset_(offset),
      length_(length),
      words_(static_cast<std::size_t>((length + 63) / 64), 0) {}

bool SumBitmap::contains(std::int64_t value) const {
  auto k = value - offset_;
  if (k < 0 || k >= length_) return false;
  return (words_[k >> 6] >> (k & 63)) & 1u;
}

void SumBitmap::insert(std::int64_t value) {
  auto k = value - offset_;
  if (k < 0 || k >= length_) return;
  words_[k >> 6] |= std::uint64_t{1} << (k & 63);
}

std::vector<std::int64_t> SumBitmap::values() const {
  std::vector<std::int64_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(offset_ + static_cast<std::int64_t>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

namespace {

// words |= words << shift, restricted to the bitmap length.
void shift_or(std::vector<std::uint64_t>& words, std::int64_t length,
              std::int64_t shift) {
  if (shift <= 0 || shift >= length) return;
  const auto word_shift = static_cast<std::size_t>(shift >> 6);
  const int bit_shift = static_cast<int>(shift & 63);
  for (std::size_t i = words.size(); i-- > word_shift;) {
    std::uint64_t v = words[i - word_shift] << bit_shift;
    if (bit_shift != 0 && i - word_shift > 0)
      v |= words[i - word_shift - 1] >> (64 - bit_shift);
    words[i] |= v;
  }
  if (length % 64 != 0) words.back() &= (std::uint64_t{1} << (length % 64)) - 1;
}

}  // namespace

SumBitmap bitset_subset_sums(std::span<const std::int64_t> elements,
                             std::int64_t t, std::uint64_t max_bits) {
  if (t < 0) return SumBitmap(0, 0);
  if (static_cast<std::uint64_t>(t) + 1 > max_bits)
    throw BudgetExceeded("subset-sum bitmap exceeds the bit budget");
  SumBitmap out(0, t + 1);
  out.insert(0);
  for (auto a : elements) {
    if (a < 0) throw MalformedInput("negative element");
    shift_or(out.words(), out.length(), a);
  }
  return out;
}

SumBitmap signed_subset_sums(std::span<const std::int64_t> elements,
                             std::uint64_t max_bits) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (auto a : elements) (a < 0 ? lo : hi) += a;
  if (static_cast<std::uint64_t>(hi - lo) + 1 > max_bits)
    throw BudgetExceeded("subset-sum bitmap exceeds the bit budget");
  // Shift everything by -lo: choosing a negative element a is the same as
  // not choosing |a| in the shifted problem, so start from "all negatives".
  SumBitmap out(lo, hi - lo + 1);
  out.insert(lo);
  for (auto a : elements)
    shift_or(out.words(), out.length(), a < 0 ? -a : a);
  return out;
}

std::vector<std::optional<std::size_t>> naive_row_maxima(
    const StaircaseMatrixView& view) {
  std::vector<std::optional<std::size_t>> out(view.rows);
  for (std::size_t i = 0; i < view.rows; ++i) {
    AdjustedProfit best = AdjustedProfit::bottom();
    for (std::size_t j = 0; j < view.cols; ++j) {
      auto v = view.entry(i, j);
      if (v.is_finite() && (!out[i] || v > best)) {
        best = v;
        out[i] = j;
      }
    }
  }
  return out;
}

ProximityDistance proximity_check(const ItemSelection& prefix,
                                  const ItemSelection& solution,
                                  const KnapsackInstance& instance) {
  std::set<std::size_t> p(prefix.begin(), prefix.end());
  std::set<std::size_t> q(solution.begin(), solution.end());
  std::set<std::int64_t> p_only_weights;
  std::set<std::int64_t> q_only_weights;
  ProximityDistance out;
  for (auto i : p) {
    if (!q.count(i)) {
      ++out.l1;
      p_only_weights.insert(instance.items.at(i - 1).weight);
    }
  }
  for (auto i : q) {
    if (!p.count(i)) {
      ++out.l1;
      q_only_weights.insert(instance.items.at(i - 1).weight);
    }
  }
  out.l0 = static_cast<std::int64_t>(p_only_weights.size() +
                                     q_only_weights.size());
  return out;
}

}  // namespace proxknap::oracle
