#pragma once

// Deterministic replacements for random colorings: discrepancy minimization
// by conditional probabilities, recursive halving into r balanced color
// classes, and pairwise independent hashing with exhaustive seed search.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace proxknap {

/// Sets over the universe {0, ..., universe - 1}. Sets may overlap.
struct SetSystem {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;
};

/// 2 sqrt(size ln(2m)).
double discrepancy_bound(std::size_t set_size, std::size_t set_count);

/// Signs x in {+1, -1}^universe with |sum_{j in S_i} x_j| <= 2 sqrt(|S_i| ln 2m)
/// for every set. Elements outside all sets get +1.
std::vector<int> set_balancing(const SetSystem& system);

struct Coloring {
  std::vector<std::size_t> color;  // color[j] in [0, colors)
  std::size_t colors = 1;
  /// Every set meets every color class in at most `bound` elements.
  double bound = 0;
};

/// max(1, log2 m) as used by balls_and_bins.
double log_sets(std::size_t set_count);

/// Colors the universe with r colors by recursive halving. Requires
/// |S_i| <= r * log_sets(m).
Coloring balls_and_bins(const SetSystem& system, std::size_t r);

/// Evaluates the halving recurrence b_k = b_{k-1}/2 + sqrt(b_{k-1} ln 2m)
/// from b_0 for `steps` steps.
double halving_bound(double b0, std::size_t set_count, int steps);

/// h(x) = top log2(m) bits of (a * x) xor b, with the product taken in
/// GF(2^l), n = 2^l. For x1 != x2 the pair (h(x1), h(x2)) is uniform over
/// [m]^2 when (a, b) is uniform over [n] x [m].
class PairwiseHash {
 public:
  PairwiseHash() = default;
  /// Seed is log2(n m) bits: the low log2(n) bits are a, the rest is b.
  static PairwiseHash sample(std::uint64_t n, std::uint64_t m, std::uint64_t seed);
  static PairwiseHash with(std::uint64_t n, std::uint64_t m, std::uint64_t a,
                           std::uint64_t b);

  std::uint64_t operator()(std::uint64_t x) const;
  std::uint64_t domain() const { return std::uint64_t{1} << field_bits_; }
  std::uint64_t range() const { return std::uint64_t{1} << range_bits_; }
  std::uint64_t multiplier() const { return a_; }
  std::uint64_t offset() const { return b_; }

 private:
  int field_bits_ = 1;
  int range_bits_ = 1;
  std::uint64_t modulus_ = 0;  // irreducible polynomial without its top bit
  std::uint64_t a_ = 0;
  std::uint64_t b_ = 0;
};

/// Lowest-weight irreducible polynomial of degree l over GF(2), top bit
/// included. 1 <= l <= 62.
std::uint64_t irreducible_polynomial(int degree);
bool is_irreducible(std::uint64_t poly);
/// Carry-less product reduced modulo `poly` (degree l, top bit included).
std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t poly);

struct IsolatingFamily {
  std::vector<PairwiseHash> colorings;
  /// first[i]: index of the first coloring that is injective on set i.
  std::vector<std::size_t> first;
  std::size_t colors = 1;  // each coloring maps into [0, colors)
};

/// Colorings into b^2 (rounded up to a power of two, at least 2) colors such
/// that each set (of size <= b, elements < universe) is colored injectively
/// by one of them.
IsolatingFamily isolating_colorings(
    const std::vector<std::vector<std::uint64_t>>& sets, std::uint64_t universe,
    std::size_t b);

}  // namespace proxknap
