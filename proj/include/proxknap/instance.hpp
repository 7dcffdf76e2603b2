#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace proxknap {

// Hard input limits, enforced at parse and validation time.
struct Limits {
  static constexpr std::uint64_t kMaxItems = 1ull << 22;
  static constexpr std::int64_t kMaxWeight = 1ll << 20;
  static constexpr std::int64_t kMaxProfit = 1ll << 32;
  static constexpr std::int64_t kMaxCapacity = 1ll << 50;
};

struct Item {
  std::int64_t weight = 0;
  std::int64_t profit = 0;

  friend bool operator==(const Item&, const Item&) = default;
};

struct KnapsackInstance {
  std::int64_t capacity = 0;
  std::vector<Item> items;

  std::size_t size() const { return items.size(); }
  /// Largest item weight; 0 for an empty instance.
  std::int64_t max_weight() const;

  friend bool operator==(const KnapsackInstance&,
                         const KnapsackInstance&) = default;
};

struct SubsetSumInstance {
  std::int64_t target = 0;
  std::vector<std::int64_t> elements;

  std::size_t size() const { return elements.size(); }
  std::int64_t max_element() const;
  /// The same problem as a knapsack instance with profit equal to weight.
  KnapsackInstance as_knapsack() const;

  friend bool operator==(const SubsetSumInstance&,
                         const SubsetSumInstance&) = default;
};

using AnyInstance = std::variant<KnapsackInstance, SubsetSumInstance>;

/// Sorted, strictly increasing list of 1-based item indices.
using ItemSelection = std::vector<std::size_t>;

/// Sparse vector of counts keyed by signed weight; zero counts are never stored.
class SolutionVector {
 public:
  void add(std::int64_t key, std::int64_t count);
  std::int64_t count(std::int64_t key) const;

  const std::map<std::int64_t, std::int64_t>& entries() const {
    return counts_;
  }
  std::size_t l0() const { return counts_.size(); }
  std::int64_t l1() const;
  std::int64_t total_weight() const;

  friend bool operator==(const SolutionVector&,
                         const SolutionVector&) = default;

 private:
  std::map<std::int64_t, std::int64_t> counts_;
};

/// Result of validate(): oversized items dropped, trivial instances flagged.
struct NormalizedInstance {
  KnapsackInstance instance;
  /// 1-based index in the original instance of every kept item, in order.
  std::vector<std::size_t> original_index;
  /// 1-based indices of items heavier than the capacity.
  std::vector<std::size_t> dropped;
  /// All kept items fit together; taking everything is optimal.
  bool trivial_all = false;
};

/// Rejects zero weights and negative profits, enforces limits, drops items that
/// cannot fit and detects the take-everything case.
NormalizedInstance validate(const KnapsackInstance& instance);

/// Limit checks shared by the parser and the generator.
void check_limits(const KnapsackInstance& instance);
void check_limits(const SubsetSumInstance& instance);

AnyInstance parse_instance(std::string_view text);
std::string serialize_instance(const KnapsackInstance& instance);
std::string serialize_instance(const SubsetSumInstance& instance);
std::string serialize_instance(const AnyInstance& instance);

/// Total weight and original-profit sum of a selection (1-based indices).
std::int64_t selection_weight(const KnapsackInstance& instance,
                              const ItemSelection& selection);
std::int64_t selection_profit(const KnapsackInstance& instance,
                              const ItemSelection& selection);

}  // namespace proxknap
