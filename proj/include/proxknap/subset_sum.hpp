#pragma once

// Subset sum through proximity: the residual problem around the greedy
// prefix is bundled into O(log w_max) layers of bounded multiplicity and
// folded from the coarsest layer down, keeping every intermediate sumset
// within O(w_max^1.5) values.

#include <cstdint>
#include <span>
#include <vector>

#include "proxknap/convolution.hpp"
#include "proxknap/instance.hpp"

namespace proxknap {

/// Z holds +w for elements outside the prefix and -w for prefix elements.
struct ResidualSubsetSum {
  std::vector<std::int64_t> z;
  std::int64_t target = 0;      // t - prefix_sum, in [0, w_max)
  std::int64_t prefix_sum = 0;
  std::int64_t w_max = 0;
};

/// Requires an instance whose elements are all <= t and do not all fit.
ResidualSubsetSum reduce_subset_sum(const SubsetSumInstance& instance);

/// Exponents a_1..a_k (ascending) with S({2^a_i}) = {0, ..., k} and no
/// exponent repeated more than twice.
std::vector<int> bundle_exponents(std::uint64_t k);

struct BundledLayers {
  /// layers[b] holds unscaled values in [-w_max, w_max]; they stand for
  /// 2^b times themselves.
  std::vector<std::vector<std::int64_t>> layers;
  std::int64_t w_max = 0;

  int top() const { return static_cast<int>(layers.size()) - 1; }
};

BundledLayers binary_bundle(std::span<const std::int64_t> z, std::int64_t w_max);

struct LayeredSumsOptions {
  double c = 4.0;
  SubsetSumMode mode = SubsetSumMode::kDeterministic;
  std::uint64_t seed = 0;
  ConvolutionOptions convolution;
  bool keep_trace = false;
};

struct LayeredSums {
  IntegerSet s0;
  /// trace[b] = S_b in units of 2^b, when requested.
  std::vector<IntegerSet> trace;
  ConvolutionCounters counters;
  std::int64_t layer_bound = 0;   // T bound, unscaled
  std::int64_t suffix_bound = 0;  // S bound, in units of 2^b
};

LayeredSums layered_sums(const BundledLayers& layers,
                         const LayeredSumsOptions& options = {});

struct SubsetSumOptions {
  double c = 4.0;
  SubsetSumMode mode = SubsetSumMode::kDeterministic;
  std::uint64_t seed = 0;
  /// Re-run with 2c and report whether the answers agree.
  bool paranoid = false;
};

struct SubsetSumResult {
  std::int64_t value = 0;  // largest attainable sum <= t
  bool exact = false;      // t itself is attainable
  bool trivial = false;
  bool paranoid_mismatch = false;
  ConvolutionCounters counters;
};

SubsetSumResult solve_subset_sum(const SubsetSumInstance& instance,
                                 const SubsetSumOptions& options = {});

}  // namespace proxknap
