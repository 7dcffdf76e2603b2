#include "proxknap/smawk.hpp"

#include <algorithm>
#include <random>

namespace proxknap {

std::size_t RowMaximaBreakpoints::column_of(std::size_t i) const {
  auto it = std::upper_bound(begin.begin(), begin.end(), i);
  return static_cast<std::size_t>(it - begin.begin()) - 1;
}

std::vector<std::size_t> RowMaximaBreakpoints::expand() const {
  std::vector<std::size_t> out(rows);
  for (std::size_t j = 0; j + 1 < begin.size(); ++j)
    for (auto i = begin[j]; i < begin[j + 1]; ++i) out[i] = j;
  return out;
}

RowMaximaBreakpoints smawk_compact(const StaircaseMatrixView& view) {
  auto entry = [&view](std::size_t i, std::size_t j) { return view.entry(i, j); };
  return smawk_compact(view.rows, view.cols, entry);
}

namespace {

bool violates(const StaircaseMatrixView& view, std::size_t i, std::size_t j,
              std::size_t i2, std::size_t j2) {
  auto rhs = view.entry(i, j2) + view.entry(i2, j);
  if (rhs.is_bottom()) return false;
  auto lhs = view.entry(i, j) + view.entry(i2, j2);
  return lhs < rhs;
}

}  // namespace

MongeCheck verify_monge(const StaircaseMatrixView& view, std::uint64_t budget,
                        std::uint64_t seed) {
  MongeCheck out;
  if (view.rows < 2 || view.cols < 2) return out;
  const std::uint64_t minors =
      static_cast<std::uint64_t>(view.rows - 1) * (view.cols - 1);
  if (minors <= budget) {
    for (std::size_t i = 0; i + 1 < view.rows; ++i) {
      for (std::size_t j = 0; j + 1 < view.cols; ++j) {
        if (violates(view, i, j, i + 1, j + 1)) {
          out.ok = false;
          out.witness = MongeWitness{i, j, i + 1, j + 1};
          return out;
        }
      }
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> row_dist(0, view.rows - 1);
  std::uniform_int_distribution<std::size_t> col_dist(0, view.cols - 1);
  for (std::uint64_t k = 0; k < budget; ++k) {
    auto i = row_dist(rng), i2 = row_dist(rng);
    auto j = col_dist(rng), j2 = col_dist(rng);
    if (i == i2 || j == j2) continue;
    if (i > i2) std::swap(i, i2);
    if (j > j2) std::swap(j, j2);
    if (violates(view, i, j, i2, j2)) {
      out.ok = false;
      out.witness = MongeWitness{i, j, i2, j2};
      return out;
    }
  }
  return out;
}

bool verify_staircase(const StaircaseMatrixView& view) {
  std::size_t previous = 0;
  for (std::size_t i = 0; i < view.rows; ++i) {
    auto prefix = view.finite_prefix(i);
    for (auto j = prefix; j < view.cols; ++j)
      if (view.entry(i, j).is_finite()) return false;
    if (prefix < previous) return false;
    previous = prefix;
  }
  return true;
}

}  // namespace proxknap
