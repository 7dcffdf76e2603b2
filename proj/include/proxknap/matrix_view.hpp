#pragma once

#include <cstddef>
#include <functional>

#include "proxknap/adjusted_profit.hpp"

namespace proxknap {

/// Implicit m x n matrix with O(1) entry access; indices are 0-based.
///
/// For SMAWK inputs the finite entries of each row form a prefix and the
/// finite entries of each column form a suffix (reverse falling staircase).
struct StaircaseMatrixView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<AdjustedProfit(std::size_t, std::size_t)> entry;

  /// Number of finite entries in row i, found by scanning; debug use only.
  std::size_t finite_prefix(std::size_t i) const {
    std::size_t j = 0;
    while (j < cols && entry(i, j).is_finite()) ++j;
    return j;
  }
};

}  // namespace proxknap
