#include "proxknap/instance.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "proxknap/errors.hpp"

namespace proxknap {

std::int64_t KnapsackInstance::max_weight() const {
  std::int64_t best = 0;
  for (const auto& item : items) best = std::max(best, item.weight);
  return best;
}

std::int64_t SubsetSumInstance::max_element() const {
  std::int64_t best = 0;
  for (auto e : elements) best = std::max(best, e);
  return best;
}

KnapsackInstance SubsetSumInstance::as_knapsack() const {
  KnapsackInstance out;
  out.capacity = target;
  out.items.reserve(elements.size());
  for (auto e : elements) out.items.push_back({e, e});
  return out;
}

void SolutionVector::add(std::int64_t key, std::int64_t count) {
  if (count == 0) return;
  auto it = counts_.find(key);
  if (it == counts_.end()) {
    counts_.emplace(key, count);
    return;
  }
  it->second += count;
  if (it->second == 0) counts_.erase(it);
}

std::int64_t SolutionVector::count(std::int64_t key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t SolutionVector::l1() const {
  std::int64_t sum = 0;
  for (const auto& [key, c] : counts_) sum += c < 0 ? -c : c;
  return sum;
}

std::int64_t SolutionVector::total_weight() const {
  std::int64_t sum = 0;
  for (const auto& [key, c] : counts_) sum += key * c;
  return sum;
}

void check_limits(const KnapsackInstance& instance) {
  if (instance.items.size() > Limits::kMaxItems)
    throw LimitError("item count exceeds 2^22");
  if (instance.capacity < 0 || instance.capacity > Limits::kMaxCapacity)
    throw LimitError("capacity outside [0, 2^50]");
  for (const auto& item : instance.items) {
    if (item.weight > Limits::kMaxWeight)
      throw LimitError("weight exceeds 2^20");
    if (item.profit > Limits::kMaxProfit)
      throw LimitError("profit exceeds 2^32");
  }
}

void check_limits(const SubsetSumInstance& instance) {
  if (instance.elements.size() > Limits::kMaxItems)
    throw LimitError("element count exceeds 2^22");
  if (instance.target < 0 || instance.target > Limits::kMaxCapacity)
    throw LimitError("target outside [0, 2^50]");
  for (auto e : instance.elements) {
    if (e > Limits::kMaxWeight) throw LimitError("element exceeds 2^20");
  }
}

NormalizedInstance validate(const KnapsackInstance& instance) {
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const auto& item = instance.items[i];
    if (item.weight <= 0)
      throw MalformedInput("item " + std::to_string(i + 1) +
                           " has non-positive weight");
    if (item.profit < 0)
      throw MalformedInput("item " + std::to_string(i + 1) +
                           " has negative profit");
  }
  check_limits(instance);

  NormalizedInstance out;
  out.instance.capacity = instance.capacity;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const auto& item = instance.items[i];
    if (item.weight > instance.capacity) {
      out.dropped.push_back(i + 1);
      continue;
    }
    out.instance.items.push_back(item);
    out.original_index.push_back(i + 1);
    total += item.weight;
  }
  out.trivial_all = total <= instance.capacity;
  return out;
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Skips comment lines; returns false at end of input.
  bool next_line() {
    while (pos_ < text_.size()) {
      ++line_;
      line_begin_ = pos_;
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      current_ = text_.substr(pos_, end - pos_);
      pos_ = end == text_.size() ? end : end + 1;
      column_ = 0;
      if (!current_.empty() && current_.front() == '#') continue;
      return true;
    }
    return false;
  }

  bool at_end_of_line() const { return column_ == current_.size(); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_ + 1; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + 1);
  }

  std::string_view word() {
    auto start = column_;
    while (column_ < current_.size() && current_[column_] != ' ') ++column_;
    if (start == column_) fail("expected a token");
    return current_.substr(start, column_ - start);
  }

  void space() {
    if (column_ >= current_.size() || current_[column_] != ' ')
      fail("expected a single space");
    ++column_;
  }

  void end_of_line() {
    if (!at_end_of_line()) fail("unexpected trailing characters");
  }

  std::uint64_t integer(std::uint64_t limit, const char* what) {
    auto start = column_;
    auto token = word();
    for (char c : token) {
      if (c < '0' || c > '9') {
        column_ = start;
        fail(std::string("expected an unsigned decimal ") + what);
      }
    }
    if (token.size() > 1 && token.front() == '0') {
      column_ = start;
      fail(std::string("leading zero in ") + what);
    }
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || value > limit) {
      column_ = start;
      throw LimitError("line " + std::to_string(line_) + ", column " +
                       std::to_string(column_ + 1) + ": " + what +
                       " exceeds its limit " + std::to_string(limit));
    }
    return value;
  }

 private:
  std::string_view text_;
  std::string_view current_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  std::size_t line_begin_ = 0;
  std::size_t column_ = 0;
};

}  // namespace

AnyInstance parse_instance(std::string_view text) {
  Lexer lex(text);
  if (!lex.next_line()) throw ParseError("empty input", 1, 1);
  auto kind = lex.word();
  bool knapsack = false;
  if (kind == "knapsack") {
    knapsack = true;
  } else if (kind != "subsetsum") {
    throw ParseError("expected 'knapsack' or 'subsetsum'", lex.line(), 1);
  }
  lex.space();
  auto n = lex.integer(Limits::kMaxItems, "item count");
  lex.space();
  auto t = lex.integer(Limits::kMaxCapacity, "capacity");
  lex.end_of_line();

  KnapsackInstance kp;
  SubsetSumInstance ss;
  kp.capacity = static_cast<std::int64_t>(t);
  ss.target = static_cast<std::int64_t>(t);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!lex.next_line())
      throw ParseError("count mismatch: header declares " + std::to_string(n) +
                           " items, found " + std::to_string(i),
                       lex.line() + 1, 1);
    auto w = static_cast<std::int64_t>(lex.integer(Limits::kMaxWeight, "weight"));
    if (knapsack) {
      lex.space();
      auto p =
          static_cast<std::int64_t>(lex.integer(Limits::kMaxProfit, "profit"));
      kp.items.push_back({w, p});
    } else {
      ss.elements.push_back(w);
    }
    lex.end_of_line();
  }
  while (lex.next_line()) {
    if (!lex.at_end_of_line())
      lex.fail("count mismatch: more lines than the header declares");
    // A single blank line at the very end is tolerated.
    if (lex.next_line()) lex.fail("unexpected blank line");
  }
  if (knapsack) return kp;
  return ss;
}

std::string serialize_instance(const KnapsackInstance& instance) {
  std::ostringstream out;
  out << "knapsack " << instance.items.size() << ' ' << instance.capacity
      << '\n';
  for (const auto& item : instance.items)
    out << item.weight << ' ' << item.profit << '\n';
  return out.str();
}

std::string serialize_instance(const SubsetSumInstance& instance) {
  std::ostringstream out;
  out << "subsetsum " << instance.elements.size() << ' ' << instance.target
      << '\n';
  for (auto e : instance.elements) out << e << '\n';
  return out.str();
}

std::string serialize_instance(const AnyInstance& instance) {
  return std::visit([](const auto& x) { return serialize_instance(x); },
                    instance);
}

std::int64_t selection_weight(const KnapsackInstance& instance,
                              const ItemSelection& selection) {
  std::int64_t sum = 0;
  for (auto i : selection) sum += instance.items.at(i - 1).weight;
  return sum;
}

std::int64_t selection_profit(const KnapsackInstance& instance,
                              const ItemSelection& selection) {
  std::int64_t sum = 0;
  for (auto i : selection) sum += instance.items.at(i - 1).profit;
  return sum;
}

}  // namespace proxknap
