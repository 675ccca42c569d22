#ifndef RAINBOW_COLORING_HPP
#define RAINBOW_COLORING_HPP

#include "rainbow/equation.hpp"
#include "rainbow/error.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

using Color = std::uint32_t;

/// An exact coloring of [n]: every color in {0, ..., r-1} is used at least once.
/// Positions are 1-based at the interface, colors are 0-based internally.
///
/// Equality compares canonical forms, i.e. two colorings are equal when they
/// induce the same partition of [n] into color classes.
class Coloring {
public:
  explicit Coloring(std::vector<Color> assignment) : assignment_(std::move(assignment)) {
    if (assignment_.empty()) {
      throw constraint_error("coloring of [n] needs n >= 1");
    }
    Color top = 0;
    for (Color c : assignment_) {
      top = std::max(top, c);
    }
    std::vector<bool> used(static_cast<std::size_t>(top) + 1, false);
    for (Color c : assignment_) {
      used[c] = true;
    }
    for (Color c = 0; c <= top; ++c) {
      if (!used[c]) {
        throw constraint_error("coloring is not exact: color " + std::to_string(c + 1) + " of " +
                               std::to_string(top + 1) + " is never used");
      }
    }
    colors_ = static_cast<int>(top) + 1;
  }

  /// The same coloring from 1-based color labels.
  static Coloring from_one_based(const std::vector<Color>& labels) {
    std::vector<Color> zero_based;
    zero_based.reserve(labels.size());
    for (Color c : labels) {
      if (c < 1) {
        throw constraint_error("1-based color labels must be >= 1");
      }
      zero_based.push_back(c - 1);
    }
    return Coloring(std::move(zero_based));
  }

  /// Every element of [n] gets its own color.
  static Coloring distinct(int n) {
    std::vector<Color> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = static_cast<Color>(i);
    }
    return Coloring(std::move(a));
  }

  /// One color for all of [n].
  static Coloring monochrome(int n) { return Coloring(std::vector<Color>(static_cast<std::size_t>(n), 0)); }

  int n() const noexcept { return static_cast<int>(assignment_.size()); }
  int colors() const noexcept { return colors_; }

  /// Color of x, for x in [1, n].
  Color color_of(int x) const {
    if (x < 1 || x > n()) {
      throw constraint_error("position " + std::to_string(x) + " outside [1, " + std::to_string(n()) + "]");
    }
    return assignment_[static_cast<std::size_t>(x - 1)];
  }

  std::span<const Color> assignment() const noexcept { return assignment_; }

  std::vector<Color> one_based() const {
    std::vector<Color> out(assignment_);
    for (Color& c : out) {
      ++c;
    }
    return out;
  }

  /// Restricted-growth string check: each new color is exactly one above the
  /// largest color seen so far.
  bool is_canonical() const noexcept {
    Color next = 0;
    for (Color c : assignment_) {
      if (c > next) {
        return false;
      }
      if (c == next) {
        ++next;
      }
    }
    return true;
  }

  /// Color classes, each sorted, listed by color.
  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(colors_));
    for (int x = 1; x <= n(); ++x) {
      out[assignment_[static_cast<std::size_t>(x - 1)]].push_back(x);
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      s += (i ? " " : "") + std::to_string(assignment_[i] + 1);
    }
    return s;
  }

  friend bool operator==(const Coloring& a, const Coloring& b);

private:
  std::vector<Color> assignment_;
  int colors_ = 0;
};

/// Relabels colors by order of first appearance.
inline Coloring canonicalize(const Coloring& c) {
  std::vector<Color> relabel(static_cast<std::size_t>(c.colors()), 0);
  std::vector<bool> seen(static_cast<std::size_t>(c.colors()), false);
  Color next = 0;
  std::vector<Color> out;
  out.reserve(static_cast<std::size_t>(c.n()));
  for (Color col : c.assignment()) {
    if (!seen[col]) {
      seen[col] = true;
      relabel[col] = next++;
    }
    out.push_back(relabel[col]);
  }
  return Coloring(std::move(out));
}

inline bool operator==(const Coloring& a, const Coloring& b) {
  if (a.n() != b.n() || a.colors() != b.colors()) {
    return false;
  }
  const Coloring ca = canonicalize(a);
  const Coloring cb = canonicalize(b);
  return std::equal(ca.assignment_.begin(), ca.assignment_.end(), cb.assignment_.begin());
}

/// (s_0, ..., s_{r-1}): the smallest element of each color class.
inline std::vector<int> first_occurrences(const Coloring& c) {
  if (!c.is_canonical()) {
    throw constraint_error("first_occurrences needs a canonical coloring; canonicalize first");
  }
  std::vector<int> s;
  s.reserve(static_cast<std::size_t>(c.colors()));
  for (int x = 1; x <= c.n(); ++x) {
    if (c.color_of(x) == s.size()) {
      s.push_back(x);
    }
  }
  return s;
}

/// True iff the values of `solution` receive pairwise-distinct colors.
inline bool is_rainbow(const Coloring& c, const Solution& solution) {
  const auto& v = solution.values();
  if (v.back() > c.n()) {
    throw constraint_error("solution " + solution.to_string() + " exceeds n=" + std::to_string(c.n()));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (c.color_of(v[i]) == c.color_of(v[j])) {
        return false;
      }
    }
  }
  return true;
}

/// Lexicographically-first rainbow solution, or nullopt if `c` is rainbow-free.
///
/// Summands are chosen in increasing order with pairwise-distinct colors, so a
/// branch dies as soon as a color repeats or the smallest feasible completion
/// exceeds n.
inline std::optional<Solution> find_rainbow_solution(const Coloring& c, const Equation& eq) {
  const int n = c.n();
  const int count = eq.lhs_count();
  const auto colors = c.assignment();
  std::vector<int> summands(static_cast<std::size_t>(count));
  std::vector<Color> used(static_cast<std::size_t>(count));

  auto color_free = [&](Color col, int depth) {
    for (int i = 0; i < depth; ++i) {
      if (used[static_cast<std::size_t>(i)] == col) {
        return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int depth, int lo, long long total) -> bool {
    const int left = count - depth;
    if (left == 0) {
      return color_free(colors[static_cast<std::size_t>(total - 1)], depth);
    }
    for (int v = lo;; ++v) {
      const long long least = static_cast<long long>(left) * v + static_cast<long long>(left) * (left - 1) / 2;
      if (total + least > n) {
        return false;
      }
      const Color col = colors[static_cast<std::size_t>(v - 1)];
      if (!color_free(col, depth)) {
        continue;
      }
      summands[static_cast<std::size_t>(depth)] = v;
      used[static_cast<std::size_t>(depth)] = col;
      if (self(self, depth + 1, v + 1, total + v)) {
        return true;
      }
    }
  };

  if (!rec(rec, 0, 1, 0)) {
    return std::nullopt;
  }
  int total = 0;
  for (int v : summands) {
    total += v;
  }
  return detail::make_solution(summands, total);
}

inline bool is_rainbow_free(const Coloring& c, const Equation& eq) { return !find_rainbow_solution(c, eq); }

} // namespace rainbow

#endif // RAINBOW_COLORING_HPP
