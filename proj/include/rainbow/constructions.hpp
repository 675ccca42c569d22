#ifndef RAINBOW_CONSTRUCTIONS_HPP
#define RAINBOW_CONSTRUCTIONS_HPP

#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/error.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

/// floor(log2 n) for n >= 1, by bit length.
constexpr int floor_log2(std::uint64_t n) noexcept { return static_cast<int>(std::bit_width(n)) - 1; }

/// c(x) = number of trailing zero bits of x. Color i first appears at 2^i, so
/// the result is already canonical and uses floor(log2 n) + 1 colors.
inline Coloring trailing_zeros_coloring(int n) {
  if (n < 1) {
    throw constraint_error("trailing_zeros_coloring needs n >= 1");
  }
  std::vector<Color> a(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    a[static_cast<std::size_t>(x - 1)] = static_cast<Color>(std::countr_zero(static_cast<unsigned>(x)));
  }
  return Coloring(std::move(a));
}

/// Largest b_1 among increasing ell-tuples with sum >= n whose b_ell is as
/// small as possible: ceil((2n - ell(ell-1)) / (2 ell)), clamped to 1.
inline int max_b1(int n, int ell) {
  if (ell < 2) {
    throw constraint_error("max_b1 needs ell >= 2, got " + std::to_string(ell));
  }
  if (n < 1) {
    throw constraint_error("max_b1 needs n >= 1");
  }
  const long long num = 2LL * n - static_cast<long long>(ell) * (ell - 1);
  const long long den = 2LL * ell;
  if (num <= 0) {
    return 1;
  }
  return static_cast<int>(std::max(1LL, (num + den - 1) / den));
}

/// L for the staircase coloring: max_b1(n, k - 2).
inline int staircase_threshold(int n, int k) {
  if (k < 4) {
    throw unsupported_error("staircase threshold is defined for k >= 4");
  }
  return max_b1(n, k - 2);
}

/// {1, ..., L-1} share color 0; every x >= L gets its own color. Uses
/// n - L + 2 colors and avoids rainbow solutions for k >= 4.
inline Coloring staircase_coloring(int n, int k) {
  if (k < 4) {
    throw unsupported_error("staircase coloring is defined for k >= 4; for k=3 use trailing_zeros_coloring");
  }
  const Equation eq(k);
  if (n < 1 || !eq.has_solutions(n)) {
    throw no_solutions_error(n, k);
  }
  const int L = staircase_threshold(n, k);
  std::vector<Color> a(static_cast<std::size_t>(n), 0);
  // L >= 3 whenever solutions exist, so color 0 is non-empty.
  for (int x = L; x <= n; ++x) {
    a[static_cast<std::size_t>(x - 1)] = static_cast<Color>(x - L + 1);
  }
  return Coloring(std::move(a));
}

/// floor(log2 n) + 2, for n >= 3.
inline int rb_formula_k3(int n) {
  if (n < 3) {
    throw out_of_range_error("k=3 formula holds for n >= 3, got n=" + std::to_string(n));
  }
  return floor_log2(static_cast<std::uint64_t>(n)) + 2;
}

/// floor((n + 7) / 2), for n >= 5.
inline int rb_formula_k4(int n) {
  if (n < 5) {
    throw out_of_range_error("k=4 formula holds for n >= 5, got n=" + std::to_string(n));
  }
  return (n + 7) / 2;
}

/// Closed-form value when one is proven for (n, k), else nullopt.
inline std::optional<int> rb_formula(int n, int k) {
  if (k == 3 && n >= 3) {
    return rb_formula_k3(n);
  }
  if (k == 4 && n >= 5) {
    return rb_formula_k4(n);
  }
  return std::nullopt;
}

struct BoundsReport {
  int n = 0;
  int k = 0;
  int L = 0;
  int general_lower = 0;
  std::optional<int> formula_value;
  bool has_solutions = false;
};

/// Lower bound on rb([n], eq) for k >= 4: n + 1 without solutions, else
/// n - L + 3 via the staircase coloring.
inline BoundsReport general_lower_bound(int n, int k) {
  if (k < 4) {
    throw unsupported_error("general lower bound is stated for k >= 4; for k=3 use rb_formula_k3");
  }
  if (n < 1) {
    throw constraint_error("n must be >= 1");
  }
  BoundsReport b;
  b.n = n;
  b.k = k;
  b.has_solutions = Equation(k).has_solutions(n);
  b.L = staircase_threshold(n, k);
  b.general_lower = b.has_solutions ? n - b.L + 3 : n + 1;
  b.formula_value = rb_formula(n, k);
  return b;
}

/// Best constructive lower bound on rb for any k >= 3.
inline int construction_lower_bound(int n, int k) {
  const Equation eq(k);
  if (!eq.has_solutions(n)) {
    return n + 1;
  }
  if (k == 3) {
    return floor_log2(static_cast<std::uint64_t>(n)) + 2;
  }
  return general_lower_bound(n, k).general_lower;
}

/// The rainbow-free coloring behind construction_lower_bound: trailing zeros
/// for k=3, staircase for k>=4, and all-distinct when [n] has no solutions.
inline Coloring lower_bound_coloring(int n, int k) {
  const Equation eq(k);
  if (!eq.has_solutions(n)) {
    return Coloring::distinct(n);
  }
  return k == 3 ? trailing_zeros_coloring(n) : staircase_coloring(n, k);
}

/// s_{i+1} >= 2 s_i and s_i >= 2^i for every color i. Necessary for a
/// canonical coloring to be rainbow-free under x_1 + x_2 = x_3.
inline bool check_s_bounds(const Coloring& c) {
  const std::vector<int> s = first_occurrences(c);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i >= 31 || (1LL << i) > s[i]) {
      return false;
    }
    if (i + 1 < s.size() && s[i + 1] < 2LL * s[i]) {
      return false;
    }
  }
  return true;
}

} // namespace rainbow

#endif // RAINBOW_CONSTRUCTIONS_HPP
