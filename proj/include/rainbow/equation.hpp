#ifndef RAINBOW_EQUATION_HPP
#define RAINBOW_EQUATION_HPP

#include "rainbow/error.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <string>
#include <vector>

namespace rainbow {

/// The equation x_1 + ... + x_{k-1} = x_k over positive integers.
class Equation {
public:
  explicit Equation(int k) : k_(k) {
    if (k < 3) {
      throw constraint_error("equation needs k >= 3 variables, got k=" + std::to_string(k));
    }
  }

  int k() const noexcept { return k_; }
  int lhs_count() const noexcept { return k_ - 1; }

  /// Smallest possible maximum of a non-degenerate solution: 1 + 2 + ... + (k-1).
  int min_solution_max() const noexcept { return k_ * (k_ - 1) / 2; }

  bool has_solutions(int n) const noexcept { return n >= min_solution_max(); }

  std::string to_string() const {
    std::string s;
    for (int i = 1; i < k_; ++i) {
      s += (i > 1 ? " + x" : "x") + std::to_string(i);
    }
    return s + " = x" + std::to_string(k_);
  }

  friend bool operator==(const Equation&, const Equation&) = default;

private:
  int k_;
};

/// A non-degenerate solution, stored as its sorted value set. For this
/// equation family the largest value is always x_k.
class Solution {
public:
  explicit Solution(std::vector<int> values) : values_(std::move(values)) {
    if (values_.size() < 3) {
      throw constraint_error("a solution has at least 3 values");
    }
    std::sort(values_.begin(), values_.end());
    if (values_.front() < 1) {
      throw constraint_error("solution values must be positive");
    }
    if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
      throw constraint_error("degenerate solution: repeated value");
    }
    const long long rest = std::accumulate(values_.begin(), values_.end() - 1, 0LL);
    if (rest != values_.back()) {
      throw constraint_error("largest value must equal the sum of the others");
    }
  }

  const std::vector<int>& values() const noexcept { return values_; }
  int k() const noexcept { return static_cast<int>(values_.size()); }
  int max() const noexcept { return values_.back(); }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      s += (i ? "," : "") + std::to_string(values_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution& a, const Solution& b) { return a.values_ <=> b.values_; }

private:
  std::vector<int> values_;
};

namespace detail {

// Visits every strictly increasing tuple of `count` positive summands whose
// total is at most `limit`, in lexicographic order. `fn(summands, total)`.
template <typename Fn>
void for_each_summand_set(int count, int limit, Fn&& fn) {
  std::vector<int> summands(static_cast<std::size_t>(count));
  auto rec = [&](auto&& self, int depth, int lo, int total) -> void {
    const int left = count - depth;
    if (left == 0) {
      fn(static_cast<const std::vector<int>&>(summands), total);
      return;
    }
    // the remaining summands are at least v, v+1, ..., v+left-1
    for (int v = lo;; ++v) {
      const long long least = static_cast<long long>(left) * v + static_cast<long long>(left) * (left - 1) / 2;
      if (total + least > limit) {
        break;
      }
      summands[static_cast<std::size_t>(depth)] = v;
      self(self, depth + 1, v + 1, total + v);
    }
  };
  rec(rec, 0, 1, 0);
}

inline Solution make_solution(const std::vector<int>& summands, int total) {
  std::vector<int> values(summands);
  values.push_back(total);
  return Solution(std::move(values));
}

} // namespace detail

/// All non-degenerate solutions in [n], lexicographically sorted.
inline std::vector<Solution> enumerate_solutions(const Equation& eq, int n) {
  if (n < 1) {
    throw constraint_error("n must be >= 1");
  }
  std::vector<Solution> out;
  detail::for_each_summand_set(eq.lhs_count(), n, [&](const std::vector<int>& summands, int total) {
    out.push_back(detail::make_solution(summands, total));
  });
  return out;
}

/// Solutions whose largest element (x_k) is exactly m.
inline std::vector<Solution> solutions_with_max(const Equation& eq, int n, int m) {
  if (m < 1 || m > n) {
    throw constraint_error("m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<Solution> out;
  detail::for_each_summand_set(eq.lhs_count(), m, [&](const std::vector<int>& summands, int total) {
    if (total == m) {
      out.push_back(detail::make_solution(summands, total));
    }
  });
  return out;
}

} // namespace rainbow

#endif // RAINBOW_EQUATION_HPP
