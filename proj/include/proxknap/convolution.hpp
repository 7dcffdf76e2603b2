#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace proxknap {

/// Exact set of integers stored as a bitmap over an explicit range [lo, hi].
/// The range may be empty (hi < lo) and may include negative values.
class IntegerSet {
 public:
  IntegerSet() : IntegerSet(0, -1) {}
  IntegerSet(std::int64_t lo, std::int64_t hi);

  static IntegerSet of(std::span<const std::int64_t> values);
  static IntegerSet of(std::initializer_list<std::int64_t> values);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::int64_t range_size() const { return hi_ - lo_ + 1; }

  bool contains(std::int64_t v) const;
  void insert(std::int64_t v);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::int64_t> values() const;
  std::int64_t min() const;  // requires !empty()
  std::int64_t max() const;  // requires !empty()
  /// Largest element <= bound, or `fallback` if there is none.
  std::int64_t max_at_most(std::int64_t bound, std::int64_t fallback) const;

  /// Elements inside [lo, hi], stored over exactly that range.
  IntegerSet clipped(std::int64_t lo, std::int64_t hi) const;
  IntegerSet negated() const;

  /// Same elements (range ignored).
  friend bool operator==(const IntegerSet& a, const IntegerSet& b);

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

 private:
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::uint64_t> words_;
};

enum class SumsetBackend { kAuto, kBitset, kNtt };

struct ConvolutionOptions {
  SumsetBackend backend = SumsetBackend::kAuto;
  /// kAuto uses the bitset backend for output ranges below this many values.
  std::uint64_t bitset_threshold = 1u << 18;
  std::uint64_t max_range = 1ull << 32;
};

/// Instrumentation: total output range lengths produced by sumset calls.
struct ConvolutionCounters {
  std::uint64_t calls = 0;
  std::uint64_t total_length = 0;
};

/// {a + b}. Exact; the result range is [A.lo + B.lo, A.hi + B.hi].
IntegerSet sumset(const IntegerSet& a, const IntegerSet& b,
                  const ConvolutionOptions& options = {},
                  ConvolutionCounters* counters = nullptr);

/// {scale * a + b} without stretching A's storage when the bitset backend is
/// used; the NTT backend lays A out at stride `scale`.
IntegerSet scaled_sumset(const IntegerSet& a, std::int64_t scale,
                         const IntegerSet& b,
                         const ConvolutionOptions& options = {},
                         ConvolutionCounters* counters = nullptr);

/// {a - b}.
IntegerSet difference_set(const IntegerSet& a, const IntegerSet& b,
                          const ConvolutionOptions& options = {},
                          ConvolutionCounters* counters = nullptr);

enum class SubsetSumMode { kDeterministic, kRandomized };

/// S(A) intersected with [0, t] for a multiset of non-negative integers.
/// Randomized mode never reports an unattainable sum and misses an attainable
/// one with probability at most 1/t.
IntegerSet all_subset_sums(std::span<const std::int64_t> elements,
                           std::int64_t t,
                           SubsetSumMode mode = SubsetSumMode::kDeterministic,
                           std::uint64_t seed = 0,
                           const ConvolutionOptions& options = {});

/// Exact cyclic-free convolution of non-negative integer sequences modulo
/// p = 2^64 - 2^32 + 1. Exposed for testing.
std::vector<std::uint64_t> ntt_convolve(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b);

}  // namespace proxknap
