#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace proxknap {

using int128 = __int128;

std::string to_string(int128 value);

/// Profit with a lexicographic tie-breaking component.
///
/// An item i with profit p receives the pair (p, i * w_max + 1). Pairs add
/// component-wise and compare lexicographically, which makes all item profits
/// and all item efficiencies distinct while keeping the main component equal
/// to the original profit sum. The distinguished bottom value stands for
/// minus infinity: it compares below every finite value and absorbs addition.
class AdjustedProfit {
 public:
  constexpr AdjustedProfit() = default;
  constexpr AdjustedProfit(int128 main, int128 tiebreak)
      : main_(main), tiebreak_(tiebreak) {}

  static constexpr AdjustedProfit bottom() {
    AdjustedProfit v;
    v.bottom_ = true;
    return v;
  }
  static constexpr AdjustedProfit zero() { return {}; }

  constexpr bool is_bottom() const { return bottom_; }
  constexpr bool is_finite() const { return !bottom_; }
  constexpr int128 main() const { return main_; }
  constexpr int128 tiebreak() const { return tiebreak_; }

  constexpr AdjustedProfit operator-() const {
    if (bottom_) return *this;
    return {-main_, -tiebreak_};
  }

  constexpr AdjustedProfit& operator+=(const AdjustedProfit& other) {
    if (bottom_ || other.bottom_) {
      *this = bottom();
    } else {
      main_ += other.main_;
      tiebreak_ += other.tiebreak_;
    }
    return *this;
  }

  friend constexpr AdjustedProfit operator+(AdjustedProfit a,
                                            const AdjustedProfit& b) {
    return a += b;
  }

  // Subtracting bottom is undefined; callers only subtract finite values.
  friend constexpr AdjustedProfit operator-(AdjustedProfit a,
                                            const AdjustedProfit& b) {
    return a += -b;
  }

  friend constexpr bool operator==(const AdjustedProfit& a,
                                   const AdjustedProfit& b) {
    if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
    return a.main_ == b.main_ && a.tiebreak_ == b.tiebreak_;
  }

  friend constexpr std::strong_ordering operator<=>(const AdjustedProfit& a,
                                                    const AdjustedProfit& b) {
    if (a.bottom_ || b.bottom_) {
      if (a.bottom_ && b.bottom_) return std::strong_ordering::equal;
      return a.bottom_ ? std::strong_ordering::less
                       : std::strong_ordering::greater;
    }
    if (a.main_ != b.main_) {
      return a.main_ < b.main_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
    }
    if (a.tiebreak_ != b.tiebreak_) {
      return a.tiebreak_ < b.tiebreak_ ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  int128 main_ = 0;
  int128 tiebreak_ = 0;
  bool bottom_ = false;
};

std::string to_string(const AdjustedProfit& value);

}  // namespace proxknap
