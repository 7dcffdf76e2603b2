#include "proxknap/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "proxknap/errors.hpp"
#include "proxknap/oracles.hpp"

namespace proxknap {

TieBrokenInstance break_ties(const KnapsackInstance& instance) {
  TieBrokenInstance out;
  out.instance = instance;
  out.w_max = instance.max_weight();
  out.profit.reserve(instance.items.size());
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const int128 index = static_cast<int128>(i) + 1;
    out.profit.emplace_back(instance.items[i].profit, index * out.w_max + 1);
  }
  return out;
}

bool more_efficient(const TieBrokenInstance& instance, std::size_t a,
                    std::size_t b) {
  const int128 wa = instance.instance.items[a].weight;
  const int128 wb = instance.instance.items[b].weight;
  const auto& pa = instance.profit[a];
  const auto& pb = instance.profit[b];
  const AdjustedProfit lhs(pa.main() * wb, pa.tiebreak() * wb);
  const AdjustedProfit rhs(pb.main() * wa, pb.tiebreak() * wa);
  return rhs < lhs;
}

PrefixSolution maximal_prefix(const TieBrokenInstance& instance) {
  PrefixSolution out;
  const auto n = instance.instance.items.size();
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    if (more_efficient(instance, a, b)) return true;
    if (more_efficient(instance, b, a)) return false;
    return a < b;
  });
  const auto t = instance.instance.capacity;
  for (auto i : out.order) {
    const auto w = instance.instance.items[i].weight;
    if (out.weight + w > t) break;
    out.weight += w;
    out.profit += instance.profit[i];
    ++out.length;
  }
  out.residual = t - out.weight;
  return out;
}

std::int64_t proximity_b0(std::int64_t w_max, double c) {
  return static_cast<std::int64_t>(std::ceil(2.0 * c * std::sqrt(static_cast<double>(w_max))));
}

ProximityInstance build_proximity_instance(const TieBrokenInstance& instance,
                                           const PrefixSolution& prefix,
                                           double c) {
  ProximityInstance out;
  const auto n = static_cast<std::int64_t>(instance.instance.items.size());
  out.w_max = instance.w_max;
  out.b1 = std::min(n, 2 * out.w_max);
  out.b0 = std::min(proximity_b0(out.w_max, c), out.b1);
  out.residual = prefix.residual;
  out.prefix = prefix;
  int128 total = 0;
  for (const auto& p : instance.profit) total += p.main();
  out.penalty = total + 1;

  std::map<std::int64_t, std::vector<std::size_t>> outside, inside;
  for (std::size_t k = 0; k < prefix.order.size(); ++k) {
    const auto i = prefix.order[k];
    (k < prefix.length ? inside : outside)[instance.instance.items[i].weight].push_back(i);
  }
  const auto limit = static_cast<std::size_t>(out.b1);
  auto by_profit = [&](std::size_t a, std::size_t b) {
    return instance.profit[a] < instance.profit[b];
  };
  for (auto& [w, items] : outside) {
    std::sort(items.begin(), items.end(), [&](auto a, auto b) { return by_profit(b, a); });
    if (items.size() > limit) items.resize(limit);
    std::vector<AdjustedProfit> inc;
    for (auto i : items) inc.push_back(instance.profit[i]);
    out.keys.push_back(ProximityKey{w, ConcaveProfile(std::move(inc), out.penalty), items});
  }
  out.positive = out.keys.size();
  for (auto& [w, items] : inside) {
    std::sort(items.begin(), items.end(), by_profit);
    if (items.size() > limit) items.resize(limit);
    std::vector<AdjustedProfit> inc;
    for (auto i : items) inc.push_back(-instance.profit[i]);
    out.keys.push_back(ProximityKey{-w, ConcaveProfile(std::move(inc), out.penalty), items});
  }
  return out;
}

namespace {

BaseSolutions base_dp(const ProximityInstance& prox, bool erase) {
  BaseSolutions out;
  out.radius = prox.b0 * prox.w_max;
  const auto size = static_cast<std::int64_t>(2 * out.radius + 1);
  out.value.assign(static_cast<std::size_t>(size), AdjustedProfit::bottom());
  std::vector<std::int32_t> node(static_cast<std::size_t>(size), -1);
  std::vector<std::int64_t> support(static_cast<std::size_t>(size), 0);
  struct Link {
    std::uint32_t key;
    std::int32_t parent;
  };
  std::vector<Link> links;
  out.value[static_cast<std::size_t>(out.radius)] = AdjustedProfit::zero();

  auto relax = [&](std::int64_t s, std::int64_t src, std::uint32_t k,
                   const AdjustedProfit& gain) {
    const auto& from = out.value[static_cast<std::size_t>(src)];
    if (from.is_bottom()) return;
    const auto candidate = from + gain;
    auto& to = out.value[static_cast<std::size_t>(s)];
    if (to.is_bottom() || to < candidate) {
      to = candidate;
      links.push_back(Link{k, node[static_cast<std::size_t>(src)]});
      node[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(links.size() - 1);
      support[static_cast<std::size_t>(s)] = support[static_cast<std::size_t>(src)] + 1;
    }
  };

  for (std::uint32_t k = 0; k < prox.keys.size(); ++k) {
    const auto w = prox.keys[k].weight;
    const auto gain = prox.keys[k].profile(1);
    if (w > 0) {
      for (auto s = size - 1; s >= w; --s) relax(s, s - w, k, gain);
    } else {
      for (std::int64_t s = 0; s - w < size; ++s) relax(s, s - w, k, gain);
    }
  }

  out.support.resize(static_cast<std::size_t>(size));
  for (std::int64_t s = 0; s < size; ++s) {
    auto& v = out.value[static_cast<std::size_t>(s)];
    if (v.is_bottom()) continue;
    if (erase && support[static_cast<std::size_t>(s)] > prox.b0) {
      v = AdjustedProfit::bottom();
      continue;
    }
    auto& list = out.support[static_cast<std::size_t>(s)];
    for (auto id = node[static_cast<std::size_t>(s)]; id != -1; id = links[id].parent)
      list.push_back(links[id].key);
    std::sort(list.begin(), list.end());
  }
  return out;
}

}  // namespace

BaseSolutions base_solution_table(const ProximityInstance& prox) {
  return base_dp(prox, false);
}

BaseSolutions prepare_base_solutions(const ProximityInstance& prox) {
  return base_dp(prox, true);
}

namespace {

void reflect(WeakState& s) {
  std::reverse(s.value.begin(), s.value.end());
  std::reverse(s.handle.begin(), s.handle.end());
  std::reverse(s.origin.begin(), s.origin.end());
  std::reverse(s.source.begin(), s.source.end());
  std::reverse(s.witness.begin(), s.witness.end());
  const auto last = static_cast<std::int64_t>(s.size()) - 1;
  for (auto& z : s.source) z = last - z;
}

}  // namespace

ProximityResult solve_proximity(const ProximityInstance& prox) {
  ProximityResult out;
  const auto base = prepare_base_solutions(prox);
  const auto offset = prox.b1 * prox.w_max;
  const auto L = static_cast<std::size_t>(2 * offset + 1);

  KeyTable keys;
  for (const auto& key : prox.keys) keys.add(std::abs(key.weight), key.profile.shifted());
  SetFamily family;
  WitnessPool pool;
  std::vector<AdjustedProfit> q(L, AdjustedProfit::bottom());
  std::vector<std::uint32_t> handles(L, SetFamily::kEmpty);
  std::vector<std::uint32_t> base_handle(base.size(), SetFamily::kEmpty);
  for (std::size_t s = 0; s < base.size(); ++s) {
    if (base.value[s].is_bottom()) continue;
    const auto index = static_cast<std::size_t>(base.coordinate(s) + offset);
    q[index] = base.value[s];
    handles[index] = family.add(base.support[s]);
    base_handle[s] = handles[index];
  }

  const auto b = static_cast<std::size_t>(prox.b0);
  WeakExtendInstance phase;
  phase.keys = &keys;
  phase.family = &family;
  phase.pool = &pool;
  phase.state = WeakState::initial(std::move(q), std::move(handles));
  for (std::uint32_t k = 0; k < prox.positive; ++k) phase.universe.push_back(k);
  auto state = large_b_extend(phase, b, &out.stats);

  // Removals move indices down; reversing the window turns them into steps up.
  reflect(state);
  phase.universe.clear();
  for (auto k = static_cast<std::uint32_t>(prox.positive); k < prox.keys.size(); ++k)
    phase.universe.push_back(k);
  phase.state = std::move(state);
  state = large_b_extend(phase, b, &out.stats);
  reflect(state);

  const auto limit = static_cast<std::size_t>(std::min<std::int64_t>(
      offset + prox.residual, static_cast<std::int64_t>(L) - 1));
  std::size_t best = L;
  for (std::size_t i = 0; i <= limit; ++i) {
    if (state.value[i].is_bottom()) continue;
    if (best == L || state.value[best] < state.value[i]) best = i;
  }
  if (best == L) throw ContractViolation("no feasible proximity solution");

  out.value = state.value[best];
  const auto origin = static_cast<std::size_t>(state.origin[best]);
  std::map<KeyId, std::int64_t> counts = pool.collect(state.witness[best]);
  const auto base_slot = origin - static_cast<std::size_t>(offset - base.radius);
  for (auto k : base.support[base_slot]) counts[k] += 1;

  AdjustedProfit check = AdjustedProfit::zero();
  std::int64_t weight = 0;
  for (const auto& [k, x] : counts) {
    check += prox.keys[k].profile(x);
    weight += prox.keys[k].weight * x;
    out.counts.add(prox.keys[k].weight, x);
  }
  if (check != out.value || weight != static_cast<std::int64_t>(best) - offset)
    throw ContractViolation("reconstructed solution does not match its value");
  return out;
}

namespace {

KnapsackResult bellman_fallback(const NormalizedInstance& norm) {
  oracle::BellmanOptions options;
  options.with_selection = true;
  const auto profile = oracle::bellman_dp(norm.instance, options);
  KnapsackResult out;
  out.algorithm = "bellman";
  out.value = profile.opt.back();
  for (auto i : *profile.selection) out.selection.push_back(norm.original_index[i - 1]);
  return out;
}

}  // namespace

KnapsackResult solve_01_knapsack(const KnapsackInstance& instance,
                                 const KnapsackOptions& options) {
  const auto norm = validate(instance);
  const auto& items = norm.instance.items;
  if (norm.trivial_all) {
    KnapsackResult out;
    out.algorithm = "trivial";
    for (std::size_t k = 0; k < items.size(); ++k) {
      out.value += items[k].profit;
      out.selection.push_back(norm.original_index[k]);
    }
    return out;
  }
  if (options.algorithm == KnapsackAlgorithm::kBellman) return bellman_fallback(norm);

  const auto tb = break_ties(norm.instance);
  const auto prefix = maximal_prefix(tb);
  const auto prox = build_proximity_instance(tb, prefix, options.proximity_c);
  if (options.algorithm == KnapsackAlgorithm::kAuto) {
    const long double fast = static_cast<long double>(prox.b0) * prox.w_max *
                             static_cast<long double>(prox.keys.size() + prox.b1);
    const long double slow = static_cast<long double>(items.size()) *
                             static_cast<long double>(norm.instance.capacity);
    if (fast >= options.fallback_factor * slow) return bellman_fallback(norm);
    if (2 * prox.b1 * prox.w_max + 1 > options.max_window) return bellman_fallback(norm);
  }
  if (2 * prox.b1 * prox.w_max + 1 > options.max_window)
    throw BudgetExceeded("proximity window exceeds the budget");

  auto solved = solve_proximity(prox);
  std::vector<char> chosen(items.size(), 0);
  for (std::size_t k = 0; k < prefix.length; ++k) chosen[prefix.order[k]] = 1;
  for (const auto& key : prox.keys) {
    const auto x = solved.counts.count(key.weight);
    if (x > static_cast<std::int64_t>(key.items.size()))
      throw ContractViolation("solution uses more items than available");
    for (std::int64_t u = 0; u < x; ++u) chosen[key.items[static_cast<std::size_t>(u)]] = key.weight > 0;
  }

  KnapsackResult out;
  out.algorithm = "proximity";
  out.stats = solved.stats;
  std::int64_t weight = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!chosen[k]) continue;
    out.selection.push_back(norm.original_index[k]);
    out.value += items[k].profit;
    weight += items[k].weight;
  }
  if (weight > norm.instance.capacity)
    throw ContractViolation("reconstructed selection exceeds the capacity");
  if (out.value != prefix.profit.main() + solved.value.main())
    throw ContractViolation("reconstructed selection does not match its value");
  return out;
}

}  // namespace proxknap
