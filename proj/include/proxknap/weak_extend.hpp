#pragma once

// Weak extension of a DP array by positive steps.
//
// An instance holds profits q over indices 0..L-1, a universe U of keys with
// strictly concave Q_w, and a set S[i] per index. A solution picks for every
// i a source z <= i and counts x with z + sum w x_w = i and reports
// r[i] = q[z] + sum Q_w(x_w). It only has to be optimal at indices where
// every maximizer uses keys from S[z] alone.
//
// Sets are never copied: S[i] is family[handle[i]] intersected with the
// universe, and solving an instance carries each index's handle along from
// its source. Counts are stored as persistent chains of (key, count) steps
// shared between indices and stages, so chaining solves composes them.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "proxknap/adjusted_profit.hpp"
#include "proxknap/concave_profile.hpp"

namespace proxknap {

using KeyId = std::uint32_t;

/// Step size and Q_w of every key that may appear in a universe.
struct KeyTable {
  std::vector<std::int64_t> step;  // > 0
  std::vector<ConcaveProfile> gain;

  KeyId add(std::int64_t w, ConcaveProfile q);
  std::size_t size() const { return step.size(); }
};

/// Sets of key ids addressed by handle.
class SetFamily {
 public:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  std::uint32_t add(std::span<const KeyId> keys);
  std::span<const KeyId> operator[](std::uint32_t handle) const;
  std::size_t size() const { return start_.size() - 1; }

 private:
  std::vector<std::uint32_t> start_{0};
  std::vector<KeyId> keys_;
};

/// Persistent singly linked (key, count) chains; -1 is the empty chain.
class WitnessPool {
 public:
  struct Node {
    KeyId key;
    std::int64_t count;
    std::int32_t parent;
  };

  std::int32_t push(KeyId key, std::int64_t count, std::int32_t parent);
  const Node& operator[](std::int32_t id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }
  /// Total count per key along the chain, stopping before `stop`.
  std::map<KeyId, std::int64_t> collect(std::int32_t node, std::int32_t stop = -1) const;

 private:
  std::vector<Node> nodes_;
};

/// Per-index DP state. `source` is the z of the most recent solve, `origin`
/// the z composed back to the first state, `witness` the counts accumulated
/// since then.
struct WeakState {
  std::vector<AdjustedProfit> value;
  std::vector<std::uint32_t> handle;
  std::vector<std::int64_t> origin;
  std::vector<std::int64_t> source;
  std::vector<std::int32_t> witness;

  std::size_t size() const { return value.size(); }
  /// q with the trivial solution everywhere: origin = source = i, no counts.
  static WeakState initial(std::vector<AdjustedProfit> q,
                           std::vector<std::uint32_t> handles);
};

struct WeakExtendInstance {
  const KeyTable* keys = nullptr;
  SetFamily* family = nullptr;
  WitnessPool* pool = nullptr;
  std::vector<KeyId> universe;  // sorted key ids
  WeakState state;

  std::size_t length() const { return state.size(); }
  /// S[i] = family[handle[i]] intersected with the universe.
  std::vector<KeyId> set_at(std::size_t i) const;
};

struct WeakExtendStats {
  std::uint64_t singleton_passes = 0;
  std::uint64_t smawk_entries = 0;
  std::uint64_t segments = 0;
  std::uint64_t colorings = 0;
};

/// Requires |S[i]| <= 1 at every index with finite q.
WeakState singleton_extend(const WeakExtendInstance& instance,
                           WeakExtendStats* stats = nullptr);

/// K restricted to universe U intersected with V.
WeakExtendInstance restrict_instance(const WeakExtendInstance& instance,
                                     std::span<const KeyId> keys);
/// Universe U \ V, q = r and S[i] = S[z[i]] \ V, taking Y_V's state.
WeakExtendInstance update_instance(const WeakExtendInstance& instance,
                                   std::span<const KeyId> keys,
                                   const WeakState& solution);

/// Explicit (r, z, x) triple of a solution relative to the instance it solved.
struct ExplicitSolution {
  std::vector<AdjustedProfit> value;
  std::vector<std::int64_t> source;
  std::vector<std::map<KeyId, std::int64_t>> counts;
};

/// Reads `after` relative to the state `before` it was computed from.
ExplicitSolution materialize(const WitnessPool& pool, const WeakState& before,
                             const WeakState& after);
/// Reads a state relative to the first state of its chain (z = origin).
ExplicitSolution materialize(const WitnessPool& pool, const WeakState& state);
/// z''[i] = z[z'[i]], x''[i] = x'[i] + x[z'[i]], r'' = r'.
ExplicitSolution compose_solutions(const ExplicitSolution& first,
                                   const ExplicitSolution& second);

/// Per index the larger value; ties keep `a`.
WeakState max_solutions(const WeakState& a, const WeakState& b);
/// Per index the larger q; on ties the intersection of both sets, added to
/// the family.
WeakExtendInstance max_instances(const WeakExtendInstance& a,
                                 const WeakExtendInstance& b);

/// |S[i]| <= b. Isolating colorings into b^2 colors, one masked pass per
/// coloring, entry-wise maximum at the end.
WeakState small_b_extend(const WeakExtendInstance& instance, std::size_t b,
                         WeakExtendStats* stats = nullptr);

/// |S[i]| <= b. Splits the universe into about b / log m balanced classes and
/// solves them one after the other with small_b_extend.
WeakState large_b_extend(const WeakExtendInstance& instance, std::size_t b,
                         WeakExtendStats* stats = nullptr);

/// r[i] = q[z] + sum Q_w(x_w), recomputed from an explicit solution.
AdjustedProfit evaluate(const KeyTable& keys, const AdjustedProfit& q_source,
                        const std::map<KeyId, std::int64_t>& counts);

}  // namespace proxknap
