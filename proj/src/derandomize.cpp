#include "proxknap/derandomize.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "proxknap/errors.hpp"

namespace proxknap {

double discrepancy_bound(std::size_t set_size, std::size_t set_count) {
  return 2.0 * std::sqrt(static_cast<double>(set_size) *
                         std::log(2.0 * static_cast<double>(set_count)));
}

std::vector<int> set_balancing(const SetSystem& system) {
  const auto n = system.universe;
  const auto m = system.sets.size();
  std::vector<int> x(n, 1);
  if (m == 0) return x;

  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < m; ++i)
    for (auto j : system.sets[i]) {
      if (j >= n) throw ContractViolation("set element outside the universe");
      incident[j].push_back(i);
    }

  // Pessimistic estimator, per set:
  //   (e^{a s} + e^{-a s}) cosh(a)^u / e^{a D}
  // with s the running sum, u the unassigned count, D the bound and
  // a = D / |S|. It starts below 1/(2m) in total and never increases.
  std::vector<long double> alpha(m), bound(m), log_cosh(m);
  std::vector<long double> sum(m, 0);
  std::vector<std::size_t> left(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto size = system.sets[i].size();
    left[i] = size;
    if (size == 0) continue;
    bound[i] = discrepancy_bound(size, m);
    alpha[i] = bound[i] / static_cast<long double>(size);
    log_cosh[i] = std::log(std::cosh(alpha[i]));
  }
  auto term = [&](std::size_t i, long double s, std::size_t u) {
    const auto base = static_cast<long double>(u) * log_cosh[i] - alpha[i] * bound[i];
    return std::exp(alpha[i] * s + base) + std::exp(-alpha[i] * s + base);
  };

  for (std::size_t j = 0; j < n; ++j) {
    long double plus = 0, minus = 0;
    for (auto i : incident[j]) {
      plus += term(i, sum[i] + 1, left[i] - 1);
      minus += term(i, sum[i] - 1, left[i] - 1);
    }
    x[j] = minus < plus ? -1 : 1;
    for (auto i : incident[j]) {
      sum[i] += x[j];
      --left[i];
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const auto size = system.sets[i].size();
    if (size == 0) continue;
    long double s = 0;
    for (auto j : system.sets[i]) s += x[j];
    if (std::fabs(static_cast<double>(s)) > discrepancy_bound(size, m))
      throw ContractViolation("set balancing bound violated");
  }
  return x;
}

double log_sets(std::size_t set_count) {
  if (set_count <= 2) return 1.0;
  return std::log2(static_cast<double>(set_count));
}

double halving_bound(double b0, std::size_t set_count, int steps) {
  const double ln2m = std::log(2.0 * static_cast<double>(std::max<std::size_t>(set_count, 1)));
  double b = b0;
  for (int k = 0; k < steps; ++k) b = b / 2 + std::sqrt(b * ln2m);
  return b;
}

Coloring balls_and_bins(const SetSystem& system, std::size_t r) {
  if (r == 0) throw ContractViolation("balls and bins needs r >= 1");
  const auto m = system.sets.size();
  const double logm = log_sets(m);
  for (const auto& s : system.sets)
    if (static_cast<double>(s.size()) > static_cast<double>(r) * logm)
      throw ContractViolation("set larger than r log m");

  const auto r_pow = std::bit_floor(r);
  const int steps = std::countr_zero(r_pow);
  Coloring out;
  out.color.assign(system.universe, 0);
  out.colors = r;
  out.bound = halving_bound(2.0 * static_cast<double>(r_pow) * logm, m, steps);

  std::vector<std::size_t> local(system.universe, 0);
  for (int k = 0; k < steps; ++k) {
    const std::size_t classes = std::size_t{1} << k;
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t j = 0; j < system.universe; ++j) {
      local[j] = members[out.color[j]].size();
      members[out.color[j]].push_back(j);
    }
    std::vector<SetSystem> parts(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      parts[c].universe = members[c].size();
      parts[c].sets.resize(m);
    }
    for (std::size_t i = 0; i < m; ++i)
      for (auto j : system.sets[i]) parts[out.color[j]].sets[i].push_back(local[j]);
    for (std::size_t c = 0; c < classes; ++c) {
      const auto signs = set_balancing(parts[c]);
      for (std::size_t q = 0; q < members[c].size(); ++q)
        out.color[members[c][q]] = 2 * c + (signs[q] < 0 ? 1 : 0);
    }
  }

  std::vector<std::size_t> count(r_pow, 0);
  for (const auto& s : system.sets) {
    for (auto j : s) ++count[out.color[j]];
    for (auto j : s) {
      if (static_cast<double>(count[out.color[j]]) > out.bound)
        throw ContractViolation("balls and bins bound violated");
    }
    for (auto j : s) count[out.color[j]] = 0;
  }
  return out;
}

std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t poly) {
  const int degree = std::bit_width(poly) - 1;
  const std::uint64_t top = std::uint64_t{1} << degree;
  std::uint64_t result = 0;
  while (b) {
    if (b & 1) result ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return result;
}

namespace {

int poly_degree(std::uint64_t p) { return std::bit_width(p) - 1; }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
  const int dp = poly_degree(p);
  while (a && poly_degree(a) >= dp) a ^= p << (poly_degree(a) - dp);
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

// Ben-Or: f of degree l is irreducible iff gcd(x^(2^i) - x, f) = 1 for all
// i <= l / 2.
bool is_irreducible(std::uint64_t poly) {
  const int degree = poly_degree(poly);
  if (degree < 1 || degree > 62) return false;
  if (degree == 1) return true;
  std::uint64_t power = 2;  // x
  for (int i = 1; i <= degree / 2; ++i) {
    power = gf2_mulmod(power, power, poly);
    if (poly_gcd(poly, power ^ 2) != 1) return false;
  }
  return true;
}

std::uint64_t irreducible_polynomial(int degree) {
  if (degree < 1 || degree > 62) throw ContractViolation("unsupported field degree");
  static std::array<std::uint64_t, 63> cache{};
  static std::mutex lock;
  std::lock_guard guard(lock);
  if (cache[degree]) return cache[degree];
  const std::uint64_t top = std::uint64_t{1} << degree;
  std::uint64_t found = 0;
  if (degree == 1) {
    found = 0b10;  // x
  } else {
    // Trinomials first, then pentanomials; one of them exists for every
    // degree up to 62.
    for (int k = 1; k < degree && !found; ++k) {
      auto p = top | (std::uint64_t{1} << k) | 1;
      if (is_irreducible(p)) found = p;
    }
    for (int a = 3; a < degree && !found; ++a)
      for (int b = 2; b < a && !found; ++b)
        for (int c = 1; c < b && !found; ++c) {
          auto p = top | (std::uint64_t{1} << a) | (std::uint64_t{1} << b) |
                   (std::uint64_t{1} << c) | 1;
          if (is_irreducible(p)) found = p;
        }
  }
  if (!found) throw ContractViolation("no irreducible polynomial found");
  cache[degree] = found;
  return found;
}

PairwiseHash PairwiseHash::with(std::uint64_t n, std::uint64_t m,
                                std::uint64_t a, std::uint64_t b) {
  if (!std::has_single_bit(n) || !std::has_single_bit(m))
    throw ContractViolation("hash domain and range must be powers of two");
  if (m < 2 || n < m) throw ContractViolation("hash needs n >= m >= 2");
  PairwiseHash h;
  h.field_bits_ = std::countr_zero(n);
  h.range_bits_ = std::countr_zero(m);
  h.modulus_ = irreducible_polynomial(h.field_bits_);
  h.a_ = a & (n - 1);
  h.b_ = b & (m - 1);
  return h;
}

PairwiseHash PairwiseHash::sample(std::uint64_t n, std::uint64_t m,
                                  std::uint64_t seed) {
  if (!std::has_single_bit(n)) throw ContractViolation("hash domain must be a power of two");
  const int l = std::countr_zero(n);
  return with(n, m, seed & (n - 1), l >= 64 ? 0 : seed >> l);
}

std::uint64_t PairwiseHash::operator()(std::uint64_t x) const {
  const auto product = gf2_mulmod(a_, x & (domain() - 1), modulus_);
  return (product >> (field_bits_ - range_bits_)) ^ b_;
}

IsolatingFamily isolating_colorings(
    const std::vector<std::vector<std::uint64_t>>& sets, std::uint64_t universe,
    std::size_t b) {
  if (b == 0) b = 1;
  IsolatingFamily out;
  out.first.assign(sets.size(), 0);
  const std::uint64_t colors =
      std::bit_ceil(std::max<std::uint64_t>(2, static_cast<std::uint64_t>(b) * b));
  const std::uint64_t n = std::bit_ceil(std::max<std::uint64_t>(universe, colors));
  out.colors = colors;
  if (sets.empty()) return out;

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() > b) throw ContractViolation("set larger than b");
    if (sets[i].size() >= 2) pending.push_back(i);
  }

  std::vector<std::uint32_t> stamp(colors, 0);
  std::uint32_t clock = 0;
  auto injective = [&](const PairwiseHash& h, const std::vector<std::uint64_t>& s) {
    ++clock;
    for (auto x : s) {
      auto c = h(x);
      if (stamp[c] == clock) return false;
      stamp[c] = clock;
    }
    return true;
  };

  // Injectivity depends on the multiplier only, so b is fixed to 0.
  while (!pending.empty()) {
    bool progressed = false;
    for (std::uint64_t a = 1; a < n; ++a) {
      auto h = PairwiseHash::with(n, colors, a, 0);
      std::size_t hits = 0;
      for (auto i : pending) hits += injective(h, sets[i]) ? 1 : 0;
      if (2 * hits < pending.size()) continue;
      const auto index = out.colorings.size();
      out.colorings.push_back(h);
      std::vector<std::size_t> still;
      for (auto i : pending) {
        if (injective(h, sets[i])) {
          out.first[i] = index;
        } else {
          still.push_back(i);
        }
      }
      pending = std::move(still);
      progressed = true;
      break;
    }
    if (!progressed) throw ContractViolation("no isolating seed found");
  }
  if (out.colorings.empty()) out.colorings.push_back(PairwiseHash::with(n, colors, 1, 0));
  return out;
}

}  // namespace proxknap
