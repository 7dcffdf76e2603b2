#pragma once

// Reference implementations. Nothing in here shares code with the fast
// solvers; they exist so the fast paths can be checked against them.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "proxknap/instance.hpp"
#include "proxknap/matrix_view.hpp"

namespace proxknap::oracle {

struct KnapsackAnswer {
  std::int64_t value = 0;
  ItemSelection selection;
};

inline constexpr std::size_t kBruteForceMaxItems = 24;

/// Exhaustive search over all 2^n subsets (n <= 24). Among optimal subsets the
/// lexicographically smallest sorted index list is returned.
KnapsackAnswer brute_force_knapsack(const KnapsackInstance& instance);

struct CapacityProfile {
  std::vector<std::int64_t> opt;  // opt[c] for c = 0..t
  std::optional<ItemSelection> selection;
};

struct BellmanOptions {
  std::uint64_t max_cells = 1ull << 31;
  bool with_selection = false;
};

/// Textbook O(n t) dynamic program over capacities.
CapacityProfile bellman_dp(const KnapsackInstance& instance,
                           const BellmanOptions& options = {});

/// Dense membership bitmap over [offset, offset + length).
class SumBitmap {
 public:
  SumBitmap() = default;
  SumBitmap(std::int64_t offset, std::int64_t length);

  bool contains(std::int64_t value) const;
  void insert(std::int64_t value);
  std::int64_t offset() const { return offset_; }
  std::int64_t length() const { return length_; }
  std::vector<std::int64_t> values() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::int64_t offset_ = 0;
  std::int64_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// S(A) intersected with [0, t], by shift-or over 64-bit words.
SumBitmap bitset_subset_sums(std::span<const std::int64_t> elements,
                             std::int64_t t,
                             std::uint64_t max_bits = 1ull << 34);

/// All subset sums of a multiset of signed integers (no truncation).
SumBitmap signed_subset_sums(std::span<const std::int64_t> elements,
                             std::uint64_t max_bits = 1ull << 34);

/// Leftmost maximum column of each row; nullopt when the row has no finite
/// entry.
std::vector<std::optional<std::size_t>> naive_row_maxima(
    const StaircaseMatrixView& view);

struct ProximityDistance {
  std::int64_t l1 = 0;
  std::int64_t l0 = 0;
};

/// l1 = |P\Q| + |Q\P|; l0 = distinct weights in P\Q plus distinct weights in
/// Q\P.
ProximityDistance proximity_check(const ItemSelection& prefix,
                                  const ItemSelection& solution,
                                  const KnapsackInstance& instance);

}  // namespace proxknap::oracle
