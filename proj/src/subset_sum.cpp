#include "proxknap/subset_sum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "proxknap/errors.hpp"

namespace proxknap {

ResidualSubsetSum reduce_subset_sum(const SubsetSumInstance& instance) {
  ResidualSubsetSum out;
  const auto t = instance.target;
  std::int64_t total = 0;
  for (auto e : instance.elements) {
    if (e <= 0) throw MalformedInput("subset-sum elements must be positive");
    if (e > t) throw ContractViolation("element larger than the target");
    total += e;
    out.w_max = std::max(out.w_max, e);
  }
  if (total <= t) throw ContractViolation("all elements fit; nothing to reduce");

  std::size_t k = 0;
  while (out.prefix_sum + instance.elements[k] <= t) out.prefix_sum += instance.elements[k++];
  out.target = t - out.prefix_sum;

  // A solution never uses more than 2 w_max copies of one value.
  std::map<std::int64_t, std::int64_t> copies;
  auto take = [&](std::int64_t v) {
    if (++copies[v] <= 2 * out.w_max) out.z.push_back(v);
  };
  for (std::size_t i = 0; i < instance.elements.size(); ++i)
    take(i < k ? -instance.elements[i] : instance.elements[i]);
  return out;
}

std::vector<int> bundle_exponents(std::uint64_t k) {
  std::vector<int> out;
  if (k == 0) return out;
  const int m = std::bit_width(k + 1) - 1;  // floor(log2(k + 1))
  for (int a = 0; a < m; ++a) out.push_back(a);
  const auto rest = k - ((std::uint64_t{1} << m) - 1);
  for (int a = 0; a < 64; ++a)
    if ((rest >> a) & 1u) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

BundledLayers binary_bundle(std::span<const std::int64_t> z, std::int64_t w_max) {
  BundledLayers out;
  out.w_max = w_max;
  const int top = w_max > 0 ? std::bit_width(static_cast<std::uint64_t>(2 * w_max)) - 1 : 0;
  out.layers.resize(static_cast<std::size_t>(top) + 1);
  std::map<std::int64_t, std::uint64_t> multiplicity;
  for (auto v : z) {
    if (v == 0 || std::abs(v) > w_max) throw ContractViolation("element outside +-[w_max]");
    ++multiplicity[v];
  }
  for (const auto& [v, k] : multiplicity) {
    if (k > static_cast<std::uint64_t>(2 * w_max))
      throw ContractViolation("multiplicity above 2 w_max");
    for (auto a : bundle_exponents(k)) {
      if (a > top) throw ContractViolation("bundle exponent above the top layer");
      out.layers[static_cast<std::size_t>(a)].push_back(v);
    }
  }
  return out;
}

LayeredSums layered_sums(const BundledLayers& layers,
                         const LayeredSumsOptions& options) {
  LayeredSums out;
  const double w = static_cast<double>(layers.w_max);
  const double w15 = w * std::sqrt(w);
  out.layer_bound = static_cast<std::int64_t>(std::floor(2.0 * options.c * w15));
  out.suffix_bound = static_cast<std::int64_t>(std::floor(5.0 * options.c * w15));
  if (options.keep_trace) out.trace.resize(layers.layers.size());

  IntegerSet s = IntegerSet::of({0});
  for (int beta = layers.top(); beta >= 0; --beta) {
    std::vector<std::int64_t> plus, minus;
    for (auto v : layers.layers[static_cast<std::size_t>(beta)])
      (v > 0 ? plus : minus).push_back(std::abs(v));
    const auto t_plus = all_subset_sums(plus, out.layer_bound, options.mode,
                                        options.seed + 2 * static_cast<std::uint64_t>(beta),
                                        options.convolution);
    const auto t_minus = all_subset_sums(minus, out.layer_bound, options.mode,
                                         options.seed + 2 * static_cast<std::uint64_t>(beta) + 1,
                                         options.convolution);
    const auto t_beta = difference_set(t_plus, t_minus, options.convolution, &out.counters);
    // S_{beta+1} is in units of 2^(beta+1): doubling reinterprets it in
    // units of 2^beta.
    s = scaled_sumset(s, 2, t_beta, options.convolution, &out.counters)
            .clipped(-out.suffix_bound, out.suffix_bound);
    if (options.keep_trace) out.trace[static_cast<std::size_t>(beta)] = s;
  }
  out.s0 = std::move(s);
  return out;
}

namespace {

struct Attempt {
  std::int64_t value;
  bool exact;
  ConvolutionCounters counters;
};

Attempt run(const ResidualSubsetSum& residual, double c, SubsetSumMode mode,
            std::uint64_t seed) {
  const auto layers = binary_bundle(residual.z, residual.w_max);
  LayeredSumsOptions options;
  options.c = c;
  options.mode = mode;
  options.seed = seed;
  const auto result = layered_sums(layers, options);
  Attempt out;
  // 0 is always in S_0 (the empty residual), so the fallback is never used.
  out.value = residual.prefix_sum + result.s0.max_at_most(residual.target, 0);
  out.exact = result.s0.contains(residual.target);
  out.counters = result.counters;
  return out;
}

}  // namespace

SubsetSumResult solve_subset_sum(const SubsetSumInstance& instance,
                                 const SubsetSumOptions& options) {
  if (instance.target < 0) throw MalformedInput("negative target");
  SubsetSumInstance kept;
  kept.target = instance.target;
  std::int64_t total = 0;
  for (auto e : instance.elements) {
    if (e <= 0) throw MalformedInput("subset-sum elements must be positive");
    if (e <= instance.target) {
      kept.elements.push_back(e);
      total += e;
    }
  }
  check_limits(instance);

  SubsetSumResult out;
  if (total <= instance.target) {
    out.trivial = true;
    out.value = total;
    out.exact = total == instance.target;
    return out;
  }
  const auto residual = reduce_subset_sum(kept);
  const auto first = run(residual, options.c, options.mode, options.seed);
  out.value = first.value;
  out.exact = first.exact;
  out.counters = first.counters;
  if (options.paranoid) {
    const auto second = run(residual, 2 * options.c, options.mode, options.seed);
    out.paranoid_mismatch = second.value != first.value || second.exact != first.exact;
    if (second.value > out.value) {
      out.value = second.value;
      out.exact = second.exact;
    }
  }
  return out;
}

}  // namespace proxknap
