#pragma once

// Row maxima of convex Monge reverse falling staircase matrices.
//
// smawk_compact() returns the leftmost row maxima of an m x n matrix as n + 1
// breakpoints. On tall matrices it never looks at most rows: the rows are
// halved until at most n remain, classic SMAWK solves that level, and each
// finer level only scans the rows that sit between two coarse rows whose
// maxima differ. Total work is O(n (1 + log(m / n))) entry evaluations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "proxknap/errors.hpp"
#include "proxknap/matrix_view.hpp"

namespace proxknap {

/// Rows begin[j] <= i < begin[j + 1] have their leftmost maximum in column j.
/// begin.front() == 0 and begin.back() == rows. Rows without a finite entry
/// are reported in column 0; callers re-check finiteness.
struct RowMaximaBreakpoints {
  std::size_t rows = 0;
  std::vector<std::size_t> begin;

  std::size_t cols() const { return begin.empty() ? 0 : begin.size() - 1; }
  /// Column holding the leftmost maximum of row i.
  std::size_t column_of(std::size_t i) const;
  /// Per-row columns, materialized.
  std::vector<std::size_t> expand() const;
};

namespace detail {

template <class Entry>
class SmawkSolver {
 public:
  SmawkSolver(std::size_t m, std::size_t n, Entry& entry)
      : m_(m), n_(n), entry_(entry) {}

  RowMaximaBreakpoints run() {
    // Level h holds rows s * 2^h for s < ceil(m / 2^h).
    int levels = 0;
    while (level_rows(levels) > n_) ++levels;

    std::vector<std::size_t> base_rows(level_rows(levels));
    for (std::size_t s = 0; s < base_rows.size(); ++s)
      base_rows[s] = s << levels;
    std::vector<std::size_t> cols(n_);
    for (std::size_t j = 0; j < n_; ++j) cols[j] = j;
    answer_.assign(base_rows.size(), 0);
    std::vector<std::size_t> positions(base_rows.size());
    for (std::size_t s = 0; s < positions.size(); ++s) positions[s] = s;
    rows_ = &base_rows;
    solve(positions, cols);

    Runs runs;
    for (std::size_t s = 0; s < answer_.size(); ++s) push_run(runs, s, answer_[s]);
    for (int h = levels - 1; h >= 0; --h) runs = refine(runs, h);

    RowMaximaBreakpoints out;
    out.rows = m_;
    out.begin.assign(n_ + 1, m_);
    std::size_t next_col = 0;
    for (const auto& [start, col] : runs) {
      while (next_col <= col) out.begin[next_col++] = start;
    }
    out.begin[0] = 0;
    return out;
  }

 private:
  using Runs = std::vector<std::pair<std::size_t, std::size_t>>;

  std::size_t level_rows(int h) const {
    return (m_ + (std::size_t{1} << h) - 1) >> h;
  }

  auto value(std::size_t row, std::size_t col) { return entry_(row, col); }

  static void push_run(Runs& runs, std::size_t start, std::size_t col) {
    if (runs.empty() || runs.back().second != col) runs.emplace_back(start, col);
  }

  // Leftmost maximum of `row` among columns [lo, hi].
  std::size_t scan(std::size_t row, std::size_t lo, std::size_t hi) {
    std::size_t best_col = lo;
    auto best = value(row, lo);
    for (std::size_t j = lo + 1; j <= hi; ++j) {
      auto v = value(row, j);
      if (best < v) {
        best = v;
        best_col = j;
      }
    }
    return best_col;
  }

  // Classic SMAWK on the rows listed (as positions into *rows_) and columns.
  void solve(const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols) {
    if (rows.empty()) return;
    if (rows.size() == 1) {
      answer_[rows[0]] = scan_list(rows[0], cols, 0, cols.size() - 1);
      return;
    }
    std::vector<std::size_t> kept;
    kept.reserve(rows.size());
    for (auto c : cols) {
      while (!kept.empty()) {
        const auto row = (*rows_)[rows[kept.size() - 1]];
        if (value(row, kept.back()) < value(row, c)) {
          kept.pop_back();
        } else {
          break;
        }
      }
      if (kept.size() < rows.size()) kept.push_back(c);
    }

    std::vector<std::size_t> odd;
    odd.reserve(rows.size() / 2);
    for (std::size_t k = 1; k < rows.size(); k += 2) odd.push_back(rows[k]);
    solve(odd, kept);

    std::size_t pos = 0;
    for (std::size_t k = 0; k < rows.size(); k += 2) {
      std::size_t hi_col =
          k + 1 < rows.size() ? answer_[rows[k + 1]] : kept.back();
      std::size_t lo_pos = pos;
      while (kept[pos] < hi_col) ++pos;
      answer_[rows[k]] = scan_list(rows[k], kept, lo_pos, pos);
      // pos now indexes the upper bound column; the next even row starts there.
    }
  }

  std::size_t scan_list(std::size_t position, const std::vector<std::size_t>& cols,
                        std::size_t lo, std::size_t hi) {
    const auto row = (*rows_)[position];
    std::size_t best_col = cols[lo];
    auto best = value(row, best_col);
    for (std::size_t k = lo + 1; k <= hi; ++k) {
      auto v = value(row, cols[k]);
      if (best < v) {
        best = v;
        best_col = cols[k];
      }
    }
    return best_col;
  }

  // Runs for level h from runs for level h + 1.
  Runs refine(const Runs& coarse, int h) {
    const auto fine_rows = level_rows(h);
    const auto coarse_rows = level_rows(h + 1);
    Runs fine;
    fine.reserve(coarse.size() * 2);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      const auto [start, col] = coarse[k];
      const auto end = k + 1 < coarse.size() ? coarse[k + 1].first : coarse_rows;
      push_run(fine, 2 * start, col);
      // Odd fine row between the last coarse row of this run and the next one.
      const auto odd = 2 * (end - 1) + 1;
      if (odd >= fine_rows) continue;
      const auto upper = k + 1 < coarse.size() ? coarse[k + 1].second : n_ - 1;
      const auto found =
          upper == col ? col : scan(odd << h, col, upper);
      push_run(fine, odd, found);
    }
    return fine;
  }

  std::size_t m_;
  std::size_t n_;
  Entry& entry_;
  const std::vector<std::size_t>* rows_ = nullptr;
  std::vector<std::size_t> answer_;
};

}  // namespace detail

/// Leftmost row maxima of an implicitly given m x n convex Monge reverse
/// falling staircase matrix. `entry(i, j)` must return a totally ordered value
/// (for example AdjustedProfit, whose bottom encodes minus infinity).
template <class Entry>
RowMaximaBreakpoints smawk_compact(std::size_t m, std::size_t n, Entry&& entry) {
  if (m == 0 || n == 0) throw ContractViolation("SMAWK needs m, n >= 1");
  detail::SmawkSolver<std::remove_reference_t<Entry>> solver(m, n, entry);
  return solver.run();
}

RowMaximaBreakpoints smawk_compact(const StaircaseMatrixView& view);

struct MongeWitness {
  std::size_t row = 0, col = 0, row2 = 0, col2 = 0;
};

struct MongeCheck {
  bool ok = true;
  std::optional<MongeWitness> witness;
};

/// Checks A[i,j] + A[i',j'] >= A[i,j'] + A[i',j] (vacuous when the right side
/// is minus infinity). All adjacent 2x2 minors are checked when there are at
/// most `budget` of them, otherwise `budget` random minors.
MongeCheck verify_monge(const StaircaseMatrixView& view,
                        std::uint64_t budget = 1u << 20,
                        std::uint64_t seed = 1);

/// True when finite entries form row prefixes and column suffixes.
bool verify_staircase(const StaircaseMatrixView& view);

}  // namespace proxknap
