#include "proxknap/weak_extend.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

#include "proxknap/derandomize.hpp"
#include "proxknap/errors.hpp"
#include "proxknap/smawk.hpp"

namespace proxknap {

KeyId KeyTable::add(std::int64_t w, ConcaveProfile q) {
  if (w <= 0) throw ContractViolation("extension keys must be positive");
  step.push_back(w);
  gain.push_back(std::move(q));
  return static_cast<KeyId>(step.size() - 1);
}

std::uint32_t SetFamily::add(std::span<const KeyId> keys) {
  keys_.insert(keys_.end(), keys.begin(), keys.end());
  start_.push_back(static_cast<std::uint32_t>(keys_.size()));
  return static_cast<std::uint32_t>(start_.size() - 2);
}

std::span<const KeyId> SetFamily::operator[](std::uint32_t handle) const {
  if (handle == kEmpty) return {};
  return std::span<const KeyId>(keys_.data() + start_[handle],
                                start_[handle + 1] - start_[handle]);
}

std::int32_t WitnessPool::push(KeyId key, std::int64_t count, std::int32_t parent) {
  nodes_.push_back(Node{key, count, parent});
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::map<KeyId, std::int64_t> WitnessPool::collect(std::int32_t node,
                                                   std::int32_t stop) const {
  std::map<KeyId, std::int64_t> out;
  while (node != stop) {
    if (node < 0) throw ContractViolation("witness chain does not reach its base");
    const auto& n = (*this)[node];
    if (n.count != 0) out[n.key] += n.count;
    node = n.parent;
  }
  return out;
}

WeakState WeakState::initial(std::vector<AdjustedProfit> q,
                             std::vector<std::uint32_t> handles) {
  WeakState s;
  const auto n = q.size();
  s.value = std::move(q);
  s.handle = std::move(handles);
  if (s.handle.size() != n) s.handle.resize(n, SetFamily::kEmpty);
  s.origin.resize(n);
  s.source.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.origin[i] = s.source[i] = static_cast<std::int64_t>(i);
  s.witness.assign(n, -1);
  return s;
}

std::vector<KeyId> WeakExtendInstance::set_at(std::size_t i) const {
  std::vector<KeyId> out;
  for (auto k : (*family)[state.handle[i]])
    if (std::binary_search(universe.begin(), universe.end(), k)) out.push_back(k);
  return out;
}

namespace {

// Intersections family[h] with the universe, computed once per handle.
class UniverseSets {
 public:
  UniverseSets(const WeakExtendInstance& instance)
      : instance_(instance),
        member_(instance.keys->size(), 0),
        cache_(instance.family->size()),
        known_(instance.family->size(), 0) {
    for (auto k : instance.universe) member_[k] = 1;
  }

  const std::vector<KeyId>& get(std::uint32_t handle) {
    if (handle == SetFamily::kEmpty) return empty_;
    if (!known_[handle]) {
      for (auto k : (*instance_.family)[handle])
        if (member_[k]) cache_[handle].push_back(k);
      std::sort(cache_[handle].begin(), cache_[handle].end());
      known_[handle] = 1;
    }
    return cache_[handle];
  }

 private:
  const WeakExtendInstance& instance_;
  std::vector<char> member_;
  std::vector<std::vector<KeyId>> cache_;
  std::vector<char> known_;
  std::vector<KeyId> empty_;
};

struct Segment {
  std::int64_t source;
  KeyId key;
  std::int64_t first;
  std::int64_t last;
  std::int32_t next = -1;  // bucket chain
};

}  // namespace

WeakState singleton_extend(const WeakExtendInstance& instance,
                           WeakExtendStats* stats) {
  const auto& in = instance.state;
  const auto& keys = *instance.keys;
  const auto L = static_cast<std::int64_t>(instance.length());
  for (auto k : instance.universe)
    if (keys.step[k] <= 0) throw ContractViolation("mixed-sign keys");
  if (stats) ++stats->singleton_passes;

  UniverseSets sets(instance);
  // (key, residue, j) for every source that can be extended.
  std::vector<std::tuple<KeyId, std::int64_t, std::int64_t>> sources;
  for (std::int64_t j = 0; j < L; ++j) {
    if (in.value[j].is_bottom()) continue;
    const auto& s = sets.get(in.handle[j]);
    if (s.size() > 1) throw ContractViolation("singleton pass needs |S[i]| <= 1");
    if (s.empty()) continue;
    sources.emplace_back(s[0], j % keys.step[s[0]], j);
  }
  std::sort(sources.begin(), sources.end());

  // Stage 1: one compact SMAWK call per (key, residue) class.
  std::vector<Segment> segments;
  std::vector<std::int64_t> columns;
  for (std::size_t a = 0; a < sources.size();) {
    const auto [key, c, first_j] = sources[a];
    std::size_t b = a;
    columns.clear();
    while (b < sources.size() && std::get<0>(sources[b]) == key && std::get<1>(sources[b]) == c)
      columns.push_back(std::get<2>(sources[b++]));
    a = b;

    const auto w = keys.step[key];
    const auto& gain = keys.gain[key];
    const auto rows = static_cast<std::size_t>((L - 1 - c) / w + 1);
    std::uint64_t evaluations = 0;
    auto entry = [&](std::size_t r, std::size_t k) {
      ++evaluations;
      const auto i = c + static_cast<std::int64_t>(r) * w;
      const auto j = columns[k];
      if (j > i) return AdjustedProfit::bottom();
      return in.value[j] + gain((i - j) / w);
    };
    const auto breaks = smawk_compact(rows, columns.size(), entry);
    if (stats) stats->smawk_entries += evaluations;

    for (std::size_t k = 0; k < columns.size(); ++k) {
      const auto j = columns[k];
      auto lo = static_cast<std::int64_t>(breaks.begin[k]);
      const auto hi = static_cast<std::int64_t>(breaks.begin[k + 1]) - 1;
      if (k == 0) lo = std::max(lo, (j - c) / w);
      if (lo > hi) continue;
      const auto first = c + lo * w;
      const auto last = c + hi * w;
      if (first == j) {
        // The zero-step element competes on its own so that losing at j
        // cannot discard the rest of the progression.
        segments.push_back(Segment{j, key, j, j});
        if (j + w <= last) segments.push_back(Segment{j, key, j + w, last});
      } else {
        segments.push_back(Segment{j, key, first, last});
      }
    }
  }
  if (stats) stats->segments += segments.size();

  // Stage 2: left-to-right scan; the winner of each bucket advances one
  // step, every other segment in the bucket is dropped.
  std::vector<std::int32_t> head(static_cast<std::size_t>(L), -1);
  auto insert = [&](std::int32_t id, std::int64_t at) {
    segments[id].next = head[at];
    head[at] = id;
  };
  for (std::size_t s = 0; s < segments.size(); ++s)
    insert(static_cast<std::int32_t>(s), segments[s].first);

  WeakState out = in;
  for (std::int64_t i = 0; i < L; ++i) out.source[i] = i;
  for (std::int64_t i = 0; i < L; ++i) {
    std::int32_t best = -1;
    AdjustedProfit best_value = AdjustedProfit::bottom();
    for (auto id = head[i]; id != -1; id = segments[id].next) {
      const auto& seg = segments[id];
      const auto w = keys.step[seg.key];
      const auto v = in.value[seg.source] + keys.gain[seg.key]((i - seg.source) / w);
      bool better = best == -1 || best_value < v;
      if (!better && v == best_value) {
        const auto& cur = segments[best];
        better = seg.source < cur.source ||
                 (seg.source == cur.source && w < keys.step[cur.key]);
      }
      if (better) {
        best = id;
        best_value = v;
      }
    }
    if (best == -1) continue;
    const auto& seg = segments[best];
    const auto w = keys.step[seg.key];
    if (out.value[i] < best_value) {
      const auto j = seg.source;
      out.value[i] = best_value;
      out.source[i] = j;
      out.origin[i] = in.origin[j];
      out.handle[i] = in.handle[j];
      out.witness[i] = instance.pool->push(seg.key, (i - j) / w, in.witness[j]);
    }
    if (i + w <= seg.last) insert(best, i + w);
  }
  return out;
}

WeakExtendInstance restrict_instance(const WeakExtendInstance& instance,
                                     std::span<const KeyId> keys) {
  std::vector<KeyId> v(keys.begin(), keys.end());
  std::sort(v.begin(), v.end());
  WeakExtendInstance out = instance;
  out.universe.clear();
  std::set_intersection(instance.universe.begin(), instance.universe.end(),
                        v.begin(), v.end(), std::back_inserter(out.universe));
  return out;
}

WeakExtendInstance update_instance(const WeakExtendInstance& instance,
                                   std::span<const KeyId> keys,
                                   const WeakState& solution) {
  if (solution.size() != instance.length())
    throw ContractViolation("solution length differs from the instance");
  std::vector<KeyId> v(keys.begin(), keys.end());
  std::sort(v.begin(), v.end());
  WeakExtendInstance out;
  out.keys = instance.keys;
  out.family = instance.family;
  out.pool = instance.pool;
  std::set_difference(instance.universe.begin(), instance.universe.end(),
                      v.begin(), v.end(), std::back_inserter(out.universe));
  out.state = solution;
  return out;
}

ExplicitSolution materialize(const WitnessPool& pool, const WeakState& before,
                             const WeakState& after) {
  ExplicitSolution out;
  const auto n = after.size();
  out.value = after.value;
  out.source = after.source;
  out.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto z = static_cast<std::size_t>(after.source[i]);
    out.counts[i] = pool.collect(after.witness[i], before.witness[z]);
  }
  return out;
}

ExplicitSolution materialize(const WitnessPool& pool, const WeakState& state) {
  ExplicitSolution out;
  const auto n = state.size();
  out.value = state.value;
  out.source = state.origin;
  out.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.counts[i] = pool.collect(state.witness[i]);
  return out;
}

ExplicitSolution compose_solutions(const ExplicitSolution& first,
                                   const ExplicitSolution& second) {
  if (first.value.size() != second.value.size())
    throw ContractViolation("composed solutions differ in length");
  ExplicitSolution out;
  const auto n = second.value.size();
  out.value = second.value;
  out.source.resize(n);
  out.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto mid = static_cast<std::size_t>(second.source[i]);
    out.source[i] = first.source[mid];
    out.counts[i] = first.counts[mid];
    for (const auto& [key, count] : second.counts[i]) {
      if (first.counts[mid].count(key))
        throw ContractViolation("composed solutions overlap in keys");
      out.counts[i][key] += count;
    }
  }
  return out;
}

WeakState max_solutions(const WeakState& a, const WeakState& b) {
  if (a.size() != b.size()) throw ContractViolation("solutions differ in length");
  WeakState out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.value[i] < b.value[i]) {
      out.value[i] = b.value[i];
      out.handle[i] = b.handle[i];
      out.origin[i] = b.origin[i];
      out.source[i] = b.source[i];
      out.witness[i] = b.witness[i];
    }
  }
  return out;
}

WeakExtendInstance max_instances(const WeakExtendInstance& a,
                                 const WeakExtendInstance& b) {
  if (a.length() != b.length() || a.universe != b.universe || a.keys != b.keys ||
      a.family != b.family)
    throw ContractViolation("max of instances needs identical U, Q and L");
  WeakExtendInstance out = a;
  out.state = max_solutions(a.state, b.state);
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (a.state.value[i] != b.state.value[i]) continue;
    const auto ha = a.state.handle[i], hb = b.state.handle[i];
    if (ha == hb) continue;
    std::vector<KeyId> sa((*a.family)[ha].begin(), (*a.family)[ha].end());
    std::vector<KeyId> sb((*b.family)[hb].begin(), (*b.family)[hb].end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<KeyId> both;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(both));
    out.state.handle[i] = both.empty() ? SetFamily::kEmpty : out.family->add(both);
  }
  return out;
}

AdjustedProfit evaluate(const KeyTable& keys, const AdjustedProfit& q_source,
                        const std::map<KeyId, std::int64_t>& counts) {
  auto total = q_source;
  for (const auto& [key, count] : counts) total += keys.gain[key](count);
  return total;
}

namespace {

// Distinct sets S[i] (as positions in the universe) over indices with finite
// q, and the set id of every such index (-1 elsewhere).
struct DistinctSets {
  std::vector<std::vector<std::uint64_t>> sets;
  std::vector<std::int64_t> id_of_index;
  std::size_t largest = 0;
};

DistinctSets distinct_sets(const WeakExtendInstance& instance) {
  DistinctSets out;
  const auto L = instance.length();
  out.id_of_index.assign(L, -1);
  std::vector<std::int64_t> position(instance.keys->size(), -1);
  for (std::size_t p = 0; p < instance.universe.size(); ++p)
    position[instance.universe[p]] = static_cast<std::int64_t>(p);
  std::map<std::uint32_t, std::int64_t> by_handle;
  std::map<std::vector<std::uint64_t>, std::int64_t> by_content;
  for (std::size_t i = 0; i < L; ++i) {
    if (instance.state.value[i].is_bottom()) continue;
    const auto h = instance.state.handle[i];
    auto it = by_handle.find(h);
    if (it == by_handle.end()) {
      std::vector<std::uint64_t> s;
      for (auto k : (*instance.family)[h])
        if (position[k] >= 0) s.push_back(static_cast<std::uint64_t>(position[k]));
      std::sort(s.begin(), s.end());
      auto [c, inserted] = by_content.emplace(s, static_cast<std::int64_t>(out.sets.size()));
      if (inserted) {
        out.largest = std::max(out.largest, s.size());
        out.sets.push_back(std::move(s));
      }
      it = by_handle.emplace(h, c->second).first;
    }
    out.id_of_index[i] = it->second;
  }
  return out;
}

// Sources of `solved` read through the sources of the stages before it.
void compose_sources(std::vector<std::int64_t>& sources, const WeakState& solved) {
  std::vector<std::int64_t> next(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    next[i] = sources[static_cast<std::size_t>(solved.source[i])];
  sources = std::move(next);
}

std::vector<std::int64_t> identity_sources(std::size_t n) {
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(i);
  return out;
}

}  // namespace

WeakState small_b_extend(const WeakExtendInstance& instance, std::size_t b,
                         WeakExtendStats* stats) {
  const auto sets = distinct_sets(instance);
  if (sets.largest > b) throw ContractViolation("set larger than b");
  if (sets.largest <= 1) return singleton_extend(instance, stats);

  const auto family = isolating_colorings(sets.sets, instance.universe.size(), b);
  if (stats) stats->colorings += family.colorings.size();
  const auto L = instance.length();
  std::optional<WeakState> best;
  for (std::size_t c = 0; c < family.colorings.size(); ++c) {
    WeakExtendInstance running = instance;
    auto sources = identity_sources(L);
    bool any = false;
    for (std::size_t i = 0; i < L; ++i) {
      const auto id = sets.id_of_index[i];
      if (id < 0) continue;
      if (family.first[static_cast<std::size_t>(id)] == c) {
        any = true;
      } else {
        running.state.value[i] = AdjustedProfit::bottom();
      }
    }
    if (!any) continue;
    const auto& h = family.colorings[c];
    std::map<std::uint64_t, std::vector<KeyId>> classes;
    for (std::size_t p = 0; p < instance.universe.size(); ++p)
      classes[h(p)].push_back(instance.universe[p]);
    for (const auto& [color, keys] : classes) {
      const auto solved = singleton_extend(restrict_instance(running, keys), stats);
      compose_sources(sources, solved);
      running = update_instance(running, keys, solved);
    }
    running.state.source = std::move(sources);
    best = best ? max_solutions(*best, running.state) : running.state;
  }
  if (!best) return instance.state;
  return *best;
}

WeakState large_b_extend(const WeakExtendInstance& instance, std::size_t b,
                         WeakExtendStats* stats) {
  const auto sets = distinct_sets(instance);
  if (sets.largest > b) throw ContractViolation("set larger than b");
  const auto m = sets.sets.size();
  const double logm = log_sets(m);
  if (m <= 1 || static_cast<double>(b) <= logm)
    return small_b_extend(instance, b, stats);
  const auto r = static_cast<std::size_t>(std::ceil(static_cast<double>(b) / logm));
  if (r <= 1) return small_b_extend(instance, b, stats);

  SetSystem system;
  system.universe = instance.universe.size();
  for (const auto& s : sets.sets)
    system.sets.emplace_back(s.begin(), s.end());
  const auto coloring = balls_and_bins(system, r);
  const auto per_class =
      std::min(b, static_cast<std::size_t>(std::floor(coloring.bound)));

  std::map<std::size_t, std::vector<KeyId>> classes;
  for (std::size_t p = 0; p < instance.universe.size(); ++p)
    classes[coloring.color[p]].push_back(instance.universe[p]);
  WeakExtendInstance running = instance;
  auto sources = identity_sources(instance.length());
  for (const auto& [color, keys] : classes) {
    const auto solved = small_b_extend(restrict_instance(running, keys), per_class, stats);
    compose_sources(sources, solved);
    running = update_instance(running, keys, solved);
  }
  running.state.source = std::move(sources);
  return running.state;
}

}  // namespace proxknap
