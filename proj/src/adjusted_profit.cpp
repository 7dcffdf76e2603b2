#include "proxknap/adjusted_profit.hpp"

#include <algorithm>

namespace proxknap {

std::string to_string(int128 value) {
  if (value == 0) return "0";
  bool negative = value < 0;
  // Work on the negative side so the minimum value does not overflow.
  if (!negative) value = -value;
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(value % 10)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string to_string(const AdjustedProfit& value) {
  if (value.is_bottom()) return "-inf";
  return "(" + to_string(value.main()) + ", " + to_string(value.tiebreak()) +
         ")";
}

}  // namespace proxknap
