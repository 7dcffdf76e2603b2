#include "proxknap/convolution.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "proxknap/errors.hpp"

namespace proxknap {

namespace {

std::size_t word_count(std::int64_t bits) {
  return bits <= 0 ? 0 : static_cast<std::size_t>((bits + 63) / 64);
}

bool test_bit(const std::vector<std::uint64_t>& words, std::int64_t k) {
  return (words[static_cast<std::size_t>(k >> 6)] >> (k & 63)) & 1u;
}

// dst |= src << offset, where src holds src_bits bits and dst is large enough.
void or_shifted(std::vector<std::uint64_t>& dst,
                const std::vector<std::uint64_t>& src, std::int64_t offset) {
  const auto word_shift = static_cast<std::size_t>(offset >> 6);
  const int bit_shift = static_cast<int>(offset & 63);
  if (bit_shift == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i + word_shift] |= src[i];
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i]) continue;
    dst[i + word_shift] |= src[i] << bit_shift;
    if (i + word_shift + 1 < dst.size())
      dst[i + word_shift + 1] |= src[i] >> (64 - bit_shift);
  }
}

void trim(std::vector<std::uint64_t>& words, std::int64_t bits) {
  if (bits % 64 != 0 && !words.empty())
    words.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
}

// Goldilocks prime: 2^64 - 2^32 + 1, with 2^32 | p - 1 and generator 7.
constexpr std::uint64_t kPrime = 0xFFFFFFFF00000001ull;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s < a || s >= kPrime) s -= kPrime;
  return s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + (kPrime - b);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<std::uint64_t>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint64_t> roots;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    auto w = pow_mod(7, (kPrime - 1) / len);
    if (inverse) w = pow_mod(w, kPrime - 2);
    const auto half = len / 2;
    roots.resize(half);
    roots[0] = 1;
    for (std::size_t k = 1; k < half; ++k) roots[k] = mul_mod(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        auto u = a[i + k];
        auto v = mul_mod(a[i + k + half], roots[k]);
        a[i + k] = add_mod(u, v);
        a[i + k + half] = sub_mod(u, v);
      }
    }
  }
  if (inverse) {
    const auto inv_n = pow_mod(n, kPrime - 2);
    for (auto& x : a) x = mul_mod(x, inv_n);
  }
}

void count_call(ConvolutionCounters* counters, std::int64_t length) {
  if (!counters) return;
  ++counters->calls;
  counters->total_length += static_cast<std::uint64_t>(std::max<std::int64_t>(length, 0));
}

bool use_bitset(const ConvolutionOptions& options, std::int64_t range,
                std::size_t iterated) {
  switch (options.backend) {
    case SumsetBackend::kBitset:
      return true;
    case SumsetBackend::kNtt:
      return false;
    case SumsetBackend::kAuto:
      break;
  }
  if (static_cast<std::uint64_t>(range) < options.bitset_threshold) return true;
  // Few shifts are cheaper than a transform even over long ranges.
  return iterated <= 16 * static_cast<std::size_t>(std::bit_width(
                              static_cast<std::uint64_t>(range)));
}

}  // namespace

IntegerSet::IntegerSet(std::int64_t lo, std::int64_t hi)
    : lo_(lo), hi_(hi), words_(word_count(hi - lo + 1), 0) {}

IntegerSet IntegerSet::of(std::span<const std::int64_t> values) {
  if (values.empty()) return IntegerSet();
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  IntegerSet out(*mn, *mx);
  for (auto v : values) out.insert(v);
  return out;
}

IntegerSet IntegerSet::of(std::initializer_list<std::int64_t> values) {
  return of(std::span<const std::int64_t>(values.begin(), values.size()));
}

bool IntegerSet::contains(std::int64_t v) const {
  if (v < lo_ || v > hi_) return false;
  return test_bit(words_, v - lo_);
}

void IntegerSet::insert(std::int64_t v) {
  if (v < lo_ || v > hi_) throw ContractViolation("value outside set range");
  const auto k = v - lo_;
  words_[static_cast<std::size_t>(k >> 6)] |= std::uint64_t{1} << (k & 63);
}

std::size_t IntegerSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::int64_t> IntegerSet::values() const {
  std::vector<std::int64_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      out.push_back(lo_ + static_cast<std::int64_t>(w * 64) + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::int64_t IntegerSet::min() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w])
      return lo_ + static_cast<std::int64_t>(w * 64) + std::countr_zero(words_[w]);
  throw ContractViolation("min of empty set");
}

std::int64_t IntegerSet::max() const {
  for (std::size_t w = words_.size(); w-- > 0;)
    if (words_[w])
      return lo_ + static_cast<std::int64_t>(w * 64) + 63 - std::countl_zero(words_[w]);
  throw ContractViolation("max of empty set");
}

std::int64_t IntegerSet::max_at_most(std::int64_t bound,
                                     std::int64_t fallback) const {
  if (bound < lo_) return fallback;
  auto k = std::min(bound, hi_) - lo_;
  auto w = static_cast<std::size_t>(k >> 6);
  auto bits = words_[w];
  const int top = static_cast<int>(k & 63);
  if (top != 63) bits &= (std::uint64_t{2} << top) - 1;
  while (true) {
    if (bits) return lo_ + static_cast<std::int64_t>(w * 64) + 63 - std::countl_zero(bits);
    if (w == 0) return fallback;
    bits = words_[--w];
  }
}

IntegerSet IntegerSet::clipped(std::int64_t lo, std::int64_t hi) const {
  IntegerSet out(lo, hi);
  const auto a = std::max(lo, lo_);
  const auto b = std::min(hi, hi_);
  for (auto v = a; v <= b; ++v) {
    // Word-at-a-time when both sides are aligned is not worth the complexity
    // here; skip empty words quickly instead.
    const auto k = v - lo_;
    if ((k & 63) == 0 && !words_[static_cast<std::size_t>(k >> 6)]) {
      v += 63;
      continue;
    }
    if (test_bit(words_, k)) out.insert(v);
  }
  return out;
}

IntegerSet IntegerSet::negated() const {
  IntegerSet out(-hi_, -lo_);
  for (auto v : values()) out.insert(-v);
  return out;
}

bool operator==(const IntegerSet& a, const IntegerSet& b) {
  return a.values() == b.values();
}

std::vector<std::uint64_t> ntt_convolve(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b) {
  if (a.empty() || b.empty()) return {};
  const auto out_len = a.size() + b.size() - 1;
  const auto n = std::bit_ceil(out_len);
  if (n > (std::size_t{1} << 32)) throw BudgetExceeded("transform too long");
  std::vector<std::uint64_t> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  fa.resize(n, 0);
  fb.resize(n, 0);
  ntt(fa, false);
  ntt(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i]);
  ntt(fa, true);
  fa.resize(out_len);
  return fa;
}

namespace {

IntegerSet tight_scaled_sumset(const IntegerSet& a, std::int64_t scale,
                               const IntegerSet& b, const ConvolutionOptions& options) {
  const auto a_lo = a.min(), a_hi = a.max();
  const auto b_lo = b.min(), b_hi = b.max();
  const auto lo = scale * a_lo + b_lo;
  const auto hi = scale * a_hi + b_hi;
  const auto range = hi - lo + 1;
  if (static_cast<std::uint64_t>(range) > options.max_range)
    throw BudgetExceeded("sumset range exceeds the budget");

  IntegerSet out(lo, hi);
  const auto a_values = a.values();
  if (use_bitset(options, range, a_values.size())) {
    const auto tight_b = b.clipped(b_lo, b_hi);
    for (auto x : a_values) or_shifted(out.words(), tight_b.words(), scale * (x - a_lo));
    trim(out.words(), range);
    return out;
  }

  std::vector<std::uint64_t> fa(static_cast<std::size_t>(scale * (a_hi - a_lo) + 1), 0);
  for (auto x : a_values) fa[static_cast<std::size_t>(scale * (x - a_lo))] = 1;
  std::vector<std::uint64_t> fb(static_cast<std::size_t>(b_hi - b_lo + 1), 0);
  for (auto y : b.values()) fb[static_cast<std::size_t>(y - b_lo)] = 1;
  const auto conv = ntt_convolve(fa, fb);
  for (std::size_t k = 0; k < conv.size(); ++k)
    if (conv[k] != 0) out.insert(lo + static_cast<std::int64_t>(k));
  return out;
}

}  // namespace

IntegerSet scaled_sumset(const IntegerSet& a, std::int64_t scale,
                         const IntegerSet& b, const ConvolutionOptions& options,
                         ConvolutionCounters* counters) {
  if (scale < 1) throw ContractViolation("sumset scale must be positive");
  if (a.range_size() <= 0 || b.range_size() <= 0) return IntegerSet();
  const auto lo = scale * a.lo() + b.lo();
  const auto hi = scale * a.hi() + b.hi();
  if (static_cast<std::uint64_t>(hi - lo + 1) > options.max_range)
    throw BudgetExceeded("sumset range exceeds the budget");
  count_call(counters, hi - lo + 1);
  IntegerSet out(lo, hi);
  if (a.empty() || b.empty()) return out;
  // The work only spans the occupied part of both operands.
  const auto tight = tight_scaled_sumset(a, scale, b, options);
  or_shifted(out.words(), tight.words(), tight.lo() - lo);
  return out;
}

IntegerSet sumset(const IntegerSet& a, const IntegerSet& b,
                  const ConvolutionOptions& options,
                  ConvolutionCounters* counters) {
  // Shift copies of the larger operand by the elements of the smaller one.
  if (a.count() > b.count()) return scaled_sumset(b, 1, a, options, counters);
  return scaled_sumset(a, 1, b, options, counters);
}

IntegerSet difference_set(const IntegerSet& a, const IntegerSet& b,
                          const ConvolutionOptions& options,
                          ConvolutionCounters* counters) {
  return sumset(a, b.negated(), options, counters);
}

namespace {

IntegerSet exact_subset_sums(std::span<const std::int64_t> elements,
                             std::int64_t t) {
  IntegerSet out(0, t);
  out.insert(0);
  auto& words = out.words();
  const auto bits = t + 1;
  for (auto a : elements) {
    if (a <= 0 || a > t) continue;
    const auto word_shift = static_cast<std::size_t>(a >> 6);
    const int bit_shift = static_cast<int>(a & 63);
    for (std::size_t i = words.size(); i-- > word_shift;) {
      std::uint64_t v = words[i - word_shift] << bit_shift;
      if (bit_shift != 0 && i > word_shift)
        v |= words[i - word_shift - 1] >> (64 - bit_shift);
      words[i] |= v;
    }
    trim(words, bits);
  }
  return out;
}

IntegerSet truncated_sum(const IntegerSet& a, const IntegerSet& b,
                         std::int64_t t, const ConvolutionOptions& options) {
  return sumset(a, b, options).clipped(0, t);
}

// Balanced combination of the per-group sets {0} + group.
IntegerSet combine_groups(std::vector<IntegerSet> sets, std::int64_t t,
                          const ConvolutionOptions& options) {
  if (sets.empty()) return IntegerSet::of({0});
  while (sets.size() > 1) {
    std::vector<IntegerSet> next;
    next.reserve((sets.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < sets.size(); i += 2)
      next.push_back(truncated_sum(sets[i], sets[i + 1], t, options));
    if (sets.size() % 2) next.push_back(std::move(sets.back()));
    sets = std::move(next);
  }
  return sets.front().clipped(0, t);
}

IntegerSet union_of(const IntegerSet& a, const IntegerSet& b, std::int64_t t) {
  IntegerSet out(0, t);
  for (auto v : a.values()) if (v >= 0 && v <= t) out.insert(v);
  for (auto v : b.values()) if (v >= 0 && v <= t) out.insert(v);
  return out;
}

// Elements in (t / 2^i, t / 2^(i-1)] are layer i; a subset summing to at most
// t uses at most 2^i of them. Layers with few elements are solved exactly,
// the rest by color coding with k^2 groups where each group contributes at
// most one element, repeated until a miss has probability below 1/(2t).
IntegerSet randomized_subset_sums(std::span<const std::int64_t> elements,
                                  std::int64_t t, std::uint64_t seed,
                                  const ConvolutionOptions& options) {
  const int layers = std::bit_width(static_cast<std::uint64_t>(t));
  std::vector<std::vector<std::int64_t>> by_layer(layers + 1);
  for (auto a : elements) {
    if (a <= 0 || a > t) continue;
    int i = 1;
    while (i < layers && a <= (t >> i)) ++i;
    by_layer[i].push_back(a);
  }
  const int repetitions =
      std::bit_width(static_cast<std::uint64_t>(2 * t * (layers + 1))) + 1;
  std::mt19937_64 rng(seed);

  IntegerSet total = IntegerSet::of({0});
  for (int i = 1; i <= layers; ++i) {
    const auto& layer = by_layer[i];
    if (layer.empty()) continue;
    const std::uint64_t k = std::uint64_t{1} << std::min(i, 31);
    IntegerSet layer_sums;
    if (k * k >= layer.size()) {
      layer_sums = exact_subset_sums(layer, t);
    } else {
      const auto groups = static_cast<std::size_t>(k * k);
      std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
      layer_sums = IntegerSet::of({0});
      for (int rep = 0; rep < repetitions; ++rep) {
        std::vector<std::vector<std::int64_t>> members(groups);
        for (auto a : layer) members[pick(rng)].push_back(a);
        std::vector<IntegerSet> sets;
        for (auto& g : members) {
          if (g.empty()) continue;
          g.push_back(0);
          sets.push_back(IntegerSet::of(g).clipped(0, t));
        }
        layer_sums = union_of(layer_sums, combine_groups(std::move(sets), t, options), t);
      }
    }
    total = truncated_sum(total, layer_sums, t, options);
  }
  return total.clipped(0, t);
}

}  // namespace

IntegerSet all_subset_sums(std::span<const std::int64_t> elements,
                           std::int64_t t, SubsetSumMode mode,
                           std::uint64_t seed,
                           const ConvolutionOptions& options) {
  if (t < 0) return IntegerSet();
  if (static_cast<std::uint64_t>(t) + 1 > options.max_range)
    throw BudgetExceeded("subset-sum range exceeds the budget");
  for (auto a : elements)
    if (a < 0) throw MalformedInput("negative element in subset-sum input");
  if (mode == SubsetSumMode::kDeterministic || t < 2)
    return exact_subset_sums(elements, t);
  return randomized_subset_sums(elements, t, seed, options);
}

}  // namespace proxknap
