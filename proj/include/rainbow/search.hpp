#ifndef RAINBOW_SEARCH_HPP
#define RAINBOW_SEARCH_HPP

#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/error.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace rainbow {

/// Largest n the exact search accepts; colors are tracked as 64-bit masks.
inline constexpr int kMaxSearchN = 64;

struct SearchLimits {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::chrono::milliseconds> max_wall_time;
  bool enumerate_all_extremal = false;
  unsigned parallel_width = 1;
  /// k=3 only: open a new color at m only if m >= 2 * (first element of the
  /// newest color). Never changes results.
  bool lemma5_prune = false;

  void validate() const {
    if (max_nodes && *max_nodes == 0) {
      throw constraint_error("max_nodes must be positive");
    }
    if (max_wall_time && max_wall_time->count() <= 0) {
      throw constraint_error("max_wall_time must be positive");
    }
    if (parallel_width == 0) {
      throw constraint_error("parallel_width must be positive");
    }
  }
};

enum class SearchStatus { complete, aborted_node_limit, aborted_time_limit };

constexpr std::string_view to_string(SearchStatus s) noexcept {
  switch (s) {
  case SearchStatus::complete:
    return "complete";
  case SearchStatus::aborted_node_limit:
    return "aborted_node_limit";
  case SearchStatus::aborted_time_limit:
    return "aborted_time_limit";
  }
  return "complete";
}

inline std::optional<SearchStatus> parse_status(std::string_view s) noexcept {
  for (auto st : {SearchStatus::complete, SearchStatus::aborted_node_limit, SearchStatus::aborted_time_limit}) {
    if (to_string(st) == s) {
      return st;
    }
  }
  return std::nullopt;
}

struct SearchStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t prunes_by_rainbow = 0;
  std::uint64_t prunes_by_bound = 0;
  std::uint64_t prunes_by_structure = 0;
  std::chrono::microseconds wall_time{0};
  bool cached = false;

  SearchStats& operator+=(const SearchStats& o) {
    nodes_visited += o.nodes_visited;
    prunes_by_rainbow += o.prunes_by_rainbow;
    prunes_by_bound += o.prunes_by_bound;
    prunes_by_structure += o.prunes_by_structure;
    wall_time += o.wall_time;
    return *this;
  }
};

struct MaxRainbowFreeResult {
  /// Exact when status is complete, otherwise a certified lower bound.
  int max_colors = 0;
  Coloring witness = Coloring::monochrome(1);
  SearchStats stats;
  SearchStatus status = SearchStatus::complete;
};

struct RbResult {
  int n = 0;
  int k = 0;
  int rb = 0;
  int max_rainbow_free_colors = 0;
  std::optional<std::uint64_t> extremal_count;
  Coloring witness = Coloring::monochrome(1);
  SearchStats stats;
  SearchStatus status = SearchStatus::complete;

  bool complete() const noexcept { return status == SearchStatus::complete; }
};

struct ExtremalResult {
  int colors = 0;
  std::vector<Coloring> colorings;
  SearchStats stats;
  SearchStatus status = SearchStatus::complete;

  bool complete() const noexcept { return status == SearchStatus::complete; }
};

/// Thrown where a yes/no answer needs a search that hit its limits.
class search_incomplete_error : public std::runtime_error {
public:
  explicit search_incomplete_error(SearchStatus s)
      : std::runtime_error("search aborted (" + std::string(to_string(s)) + ") before a definite answer"),
        status_(s) {}
  SearchStatus status() const noexcept { return status_; }

private:
  SearchStatus status_;
};

/// Called with every complete rainbow-free coloring the search reaches.
/// May be invoked concurrently when parallel_width > 1.
using LeafObserver = std::function<void(const Coloring&)>;

/// Solutions of eq in [n] grouped by their maximum, flattened into summand
/// tuples. Coloring position m completes exactly the solutions ending at m.
class SolutionIndex {
public:
  SolutionIndex(const Equation& eq, int n) : arity_(eq.lhs_count()), n_(n), offsets_(static_cast<std::size_t>(n) + 2, 0) {
    if (n < 1 || n > kMaxSearchN) {
      throw constraint_error("search supports 1 <= n <= " + std::to_string(kMaxSearchN) + ", got n=" +
                             std::to_string(n));
    }
    std::vector<std::vector<std::uint8_t>> by_max(static_cast<std::size_t>(n) + 1);
    detail::for_each_summand_set(arity_, n, [&](const std::vector<int>& summands, int total) {
      auto& bucket = by_max[static_cast<std::size_t>(total)];
      for (int v : summands) {
        bucket.push_back(static_cast<std::uint8_t>(v - 1));
      }
    });
    for (int m = 1; m <= n; ++m) {
      offsets_[static_cast<std::size_t>(m)] = summands_.size();
      const auto& bucket = by_max[static_cast<std::size_t>(m)];
      summands_.insert(summands_.end(), bucket.begin(), bucket.end());
    }
    offsets_[static_cast<std::size_t>(n) + 1] = summands_.size();
  }

  int n() const noexcept { return n_; }
  int arity() const noexcept { return arity_; }

  /// 0-based summand positions of every solution whose maximum is m.
  std::span<const std::uint8_t> summands_ending_at(int m) const noexcept {
    const auto lo = offsets_[static_cast<std::size_t>(m)];
    const auto hi = offsets_[static_cast<std::size_t>(m) + 1];
    return {summands_.data() + lo, hi - lo};
  }

  std::size_t solutions_ending_at(int m) const noexcept {
    return summands_ending_at(m).size() / static_cast<std::size_t>(arity_);
  }

  /// Mask of colors that position m may take without completing a rainbow
  /// solution, given colors of positions 1..m-1 (0-based, in `colors`) and
  /// `used` colors so far. Bit `used` stands for a fresh color.
  ///
  /// Every solution ending at m whose summands are already pairwise distinct in
  /// color forces c(m) into that summand color set.
  std::uint64_t admissible_colors(std::span<const std::uint8_t> colors, int m, int used) const noexcept {
    std::uint64_t allowed = used >= 63 ? ~0ULL : ((2ULL << used) - 1);
    const auto s = summands_ending_at(m);
    const std::size_t a = static_cast<std::size_t>(arity_);
    if (a == 2) {
      for (std::size_t i = 0; i < s.size(); i += 2) {
        const auto c0 = colors[s[i]];
        const auto c1 = colors[s[i + 1]];
        if (c0 != c1) {
          allowed &= (1ULL << c0) | (1ULL << c1);
          if (!allowed) {
            break;
          }
        }
      }
      return allowed;
    }
    for (std::size_t i = 0; i < s.size(); i += a) {
      std::uint64_t mask = 0;
      bool distinct = true;
      for (std::size_t j = 0; j < a; ++j) {
        const std::uint64_t bit = 1ULL << colors[s[i + j]];
        if (mask & bit) {
          distinct = false;
          break;
        }
        mask |= bit;
      }
      if (distinct) {
        allowed &= mask;
        if (!allowed) {
          break;
        }
      }
    }
    return allowed;
  }

private:
  int arity_;
  int n_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> summands_;
};

namespace detail {

enum class SearchMode { maximize, enumerate };

// Depth-first search over restricted-growth strings. Positions are assigned
// 1..n in order; each position tries the existing colors ascending, then one
// fresh color, so leaves are reached in lexicographic order.
//
// Parallel runs split the tree into tasks by fixing a prefix. Tasks are
// numbered in lexicographic order of their prefixes, and the shared incumbent
// packs (colors, ~task) into one word: a larger word is more colors, or equal
// colors found in an earlier task, i.e. a lexicographically smaller witness.
// Within a task the first leaf at a given color count is the smallest, so
// pruning on `pack(bound, task) <= incumbent` keeps the witness independent of
// scheduling.
class RgsSearch {
public:
  RgsSearch(const SolutionIndex& index, const Equation& eq, const SearchLimits& limits, SearchMode mode, int target,
            std::chrono::steady_clock::time_point start, std::uint64_t nodes_already, const LeafObserver* observer)
      : index_(index), n_(index.n()), limits_(limits), mode_(mode), target_(target),
        lemma5_(limits.lemma5_prune && eq.k() == 3), observer_(observer), nodes_already_(nodes_already) {
    if (limits.max_wall_time) {
      deadline_ = start + *limits.max_wall_time;
    }
  }

  struct Outcome {
    int best_colors = 0;
    std::optional<std::vector<std::uint8_t>> witness;
    std::vector<std::vector<std::uint8_t>> found;
    SearchStats stats;
    SearchStatus status = SearchStatus::complete;
  };

  Outcome run() {
    const unsigned width = std::max(1U, limits_.parallel_width);
    std::vector<Prefix> tasks = width == 1 ? std::vector<Prefix>{Prefix{}} : split(width);
    std::vector<Task> states(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= tasks.size() || stop_.load(std::memory_order_relaxed)) {
          return;
        }
        Task& st = states[t];
        st.id = static_cast<std::uint32_t>(t);
        st.colors.fill(0);
        std::copy(tasks[t].colors.begin(), tasks[t].colors.end(), st.colors.begin());
        st.first = tasks[t].first;
        st.used = tasks[t].used;
        descend(st, static_cast<int>(tasks[t].colors.size()) + 1);
        flush(st);
      }
    };

    if (width == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      const unsigned count = std::min<unsigned>(width, static_cast<unsigned>(tasks.size()));
      pool.reserve(count);
      for (unsigned i = 0; i < count; ++i) {
        pool.emplace_back(worker);
      }
      for (auto& th : pool) {
        th.join();
      }
    }

    Outcome out;
    out.stats = split_stats_;
    for (auto& st : states) {
      out.stats += st.stats;
    }
    out.status = static_cast<SearchStatus>(abort_reason_.load());
    if (mode_ == SearchMode::maximize) {
      const std::uint64_t best = best_.load();
      if (best != 0) {
        out.best_colors = static_cast<int>(best >> 32);
        const std::uint32_t winner = ~static_cast<std::uint32_t>(best & 0xffffffffULL);
        out.witness = states[winner].witness;
      }
    } else {
      out.best_colors = target_;
      for (auto& st : states) {
        for (auto& f : st.found) {
          out.found.push_back(std::move(f));
        }
      }
    }
    return out;
  }

private:
  struct Prefix {
    std::vector<std::uint8_t> colors;
    std::array<std::uint8_t, kMaxSearchN> first{};
    int used = 0;
  };

  struct Task {
    std::uint32_t id = 0;
    std::array<std::uint8_t, kMaxSearchN> colors{};
    std::array<std::uint8_t, kMaxSearchN> first{};
    int used = 0;
    SearchStats stats;
    std::uint64_t unflushed = 0;
    std::optional<std::vector<std::uint8_t>> witness;
    std::vector<std::vector<std::uint8_t>> found;
  };

  static std::uint64_t pack(int colors, std::uint32_t task) noexcept {
    return (static_cast<std::uint64_t>(colors) << 32) | static_cast<std::uint32_t>(~task);
  }

  // Colors position m may take: admissible for the rainbow check, minus a
  // fresh color when the structural prune forbids it.
  std::uint64_t candidates(const std::array<std::uint8_t, kMaxSearchN>& colors,
                           const std::array<std::uint8_t, kMaxSearchN>& first, int m, int used,
                           SearchStats& stats) const {
    std::uint64_t allowed = index_.admissible_colors(colors, m, used);
    const std::uint64_t full = used >= 63 ? ~0ULL : ((2ULL << used) - 1);
    stats.prunes_by_rainbow += static_cast<std::uint64_t>(std::popcount(full & ~allowed));
    if (lemma5_ && used >= 1 && (allowed >> used & 1ULL) && m < 2 * (first[static_cast<std::size_t>(used - 1)] + 1)) {
      allowed &= ~(1ULL << used);
      ++stats.prunes_by_structure;
    }
    return allowed;
  }

  bool bound_prunes(int bound, std::uint32_t task) const noexcept {
    if (mode_ == SearchMode::enumerate) {
      return bound < target_;
    }
    return pack(bound, task) <= best_.load(std::memory_order_relaxed);
  }

  void descend(Task& st, int m) {
    if (m > n_) {
      leaf(st);
      return;
    }
    const int used = st.used;
    const std::uint64_t allowed = candidates(st.colors, st.first, m, used, st.stats);
    for (int x = 0; x <= used; ++x) {
      if (!(allowed >> x & 1ULL)) {
        continue;
      }
      const bool fresh = x == used;
      const int bound = used + (fresh ? 1 : 0) + (n_ - m);
      if (bound_prunes(bound, st.id)) {
        ++st.stats.prunes_by_bound;
        continue;
      }
      ++st.stats.nodes_visited;
      if (++st.unflushed >= 512 && !flush(st)) {
        return;
      }
      st.colors[static_cast<std::size_t>(m - 1)] = static_cast<std::uint8_t>(x);
      if (fresh) {
        st.first[static_cast<std::size_t>(used)] = static_cast<std::uint8_t>(m - 1);
        st.used = used + 1;
      }
      descend(st, m + 1);
      st.used = used;
      if (stop_.load(std::memory_order_relaxed)) {
        return;
      }
    }
  }

  void leaf(Task& st) {
    std::vector<std::uint8_t> assignment(st.colors.begin(), st.colors.begin() + n_);
    if (observer_ && *observer_) {
      std::vector<Color> a(assignment.begin(), assignment.end());
      (*observer_)(Coloring(std::move(a)));
    }
    if (mode_ == SearchMode::enumerate) {
      if (st.used == target_) {
        st.found.push_back(std::move(assignment));
      }
      return;
    }
    const std::uint64_t mine = pack(st.used, st.id);
    std::uint64_t cur = best_.load();
    while (mine > cur) {
      if (best_.compare_exchange_weak(cur, mine)) {
        st.witness = std::move(assignment);
        return;
      }
    }
  }

  // Publishes the node count; returns false once any limit is exhausted.
  bool flush(Task& st) {
    const std::uint64_t total = nodes_.fetch_add(st.unflushed) + st.unflushed + nodes_already_;
    st.unflushed = 0;
    if (stop_.load(std::memory_order_relaxed)) {
      return false;
    }
    if (limits_.max_nodes && total >= *limits_.max_nodes) {
      abort(SearchStatus::aborted_node_limit);
      return false;
    }
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
      abort(SearchStatus::aborted_time_limit);
      return false;
    }
    return true;
  }

  void abort(SearchStatus why) {
    int expected = static_cast<int>(SearchStatus::complete);
    abort_reason_.compare_exchange_strong(expected, static_cast<int>(why));
    stop_.store(true);
  }

  // Lexicographically ordered rainbow-free prefixes, deep enough to give every
  // worker several tasks.
  std::vector<Prefix> split(unsigned width) {
    std::vector<Prefix> level{Prefix{}};
    const std::size_t wanted = static_cast<std::size_t>(width) * 16;
    for (int depth = 0; depth < n_ - 1 && level.size() < wanted; ++depth) {
      std::vector<Prefix> next;
      const int m = depth + 1;
      for (const auto& p : level) {
        std::array<std::uint8_t, kMaxSearchN> colors{};
        std::copy(p.colors.begin(), p.colors.end(), colors.begin());
        const std::uint64_t allowed = candidates(colors, p.first, m, p.used, split_stats_);
        for (int x = 0; x <= p.used; ++x) {
          if (!(allowed >> x & 1ULL)) {
            continue;
          }
          const bool fresh = x == p.used;
          if (mode_ == SearchMode::enumerate && p.used + (fresh ? 1 : 0) + (n_ - m) < target_) {
            ++split_stats_.prunes_by_bound;
            continue;
          }
          ++split_stats_.nodes_visited;
          Prefix child = p;
          child.colors.push_back(static_cast<std::uint8_t>(x));
          if (fresh) {
            child.first[static_cast<std::size_t>(p.used)] = static_cast<std::uint8_t>(depth);
            child.used = p.used + 1;
          }
          next.push_back(std::move(child));
        }
      }
      level = std::move(next);
    }
    nodes_.fetch_add(split_stats_.nodes_visited);
    return level;
  }

  const SolutionIndex& index_;
  int n_;
  SearchLimits limits_;
  SearchMode mode_;
  int target_;
  bool lemma5_;
  const LeafObserver* observer_;
  std::uint64_t nodes_already_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  SearchStats split_stats_;

  std::atomic<std::uint64_t> best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::atomic<int> abort_reason_{static_cast<int>(SearchStatus::complete)};
};

inline Coloring to_coloring(const std::vector<std::uint8_t>& a) {
  return Coloring(std::vector<Color>(a.begin(), a.end()));
}

inline std::chrono::microseconds elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
}

inline MaxRainbowFreeResult max_rainbow_free_from(int n, const Equation& eq, const SearchLimits& limits,
                                                  std::chrono::steady_clock::time_point start,
                                                  const LeafObserver* observer) {
  limits.validate();
  if (n < 1) {
    throw constraint_error("n must be >= 1");
  }
  MaxRainbowFreeResult r;
  if (!eq.has_solutions(n)) {
    r.max_colors = n;
    r.witness = Coloring::distinct(n);
    r.stats.wall_time = elapsed_since(start);
    return r;
  }
  const SolutionIndex index(eq, n);
  RgsSearch search(index, eq, limits, SearchMode::maximize, 0, start, 0, observer);
  auto out = search.run();
  r.stats = out.stats;
  r.status = out.status;
  if (out.witness) {
    r.max_colors = out.best_colors;
    r.witness = to_coloring(*out.witness);
  } else {
    // aborted before the first leaf; one color is always rainbow-free
    r.max_colors = 1;
    r.witness = Coloring::monochrome(n);
  }
  r.stats.wall_time = elapsed_since(start);
  return r;
}

inline ExtremalResult colorings_with_from(int n, const Equation& eq, int colors, const SearchLimits& limits,
                                          std::chrono::steady_clock::time_point start, std::uint64_t nodes_already) {
  ExtremalResult r;
  r.colors = colors;
  const SolutionIndex index(eq, n);
  RgsSearch search(index, eq, limits, SearchMode::enumerate, colors, start, nodes_already, nullptr);
  auto out = search.run();
  r.stats = out.stats;
  r.status = out.status;
  r.colorings.reserve(out.found.size());
  for (const auto& a : out.found) {
    r.colorings.push_back(to_coloring(a));
  }
  r.stats.wall_time = elapsed_since(start);
  return r;
}

} // namespace detail

/// Maximum r such that some exact r-coloring of [n] is rainbow-free, with the
/// lexicographically smallest canonical witness. Without solutions in [n]
/// this is (n, all-distinct).
inline MaxRainbowFreeResult max_rainbow_free(int n, const Equation& eq, const SearchLimits& limits = {},
                                             const LeafObserver& observer = {}) {
  return detail::max_rainbow_free_from(n, eq, limits, std::chrono::steady_clock::now(), &observer);
}

/// Every canonical rainbow-free coloring of [n] with exactly `colors` colors,
/// in lexicographic order.
inline ExtremalResult rainbow_free_colorings(int n, const Equation& eq, int colors, const SearchLimits& limits = {}) {
  limits.validate();
  if (n < 1 || n > kMaxSearchN) {
    throw constraint_error("search supports 1 <= n <= " + std::to_string(kMaxSearchN));
  }
  if (colors < 1 || colors > n) {
    throw constraint_error("color count must be in [1, n]");
  }
  return detail::colorings_with_from(n, eq, colors, limits, std::chrono::steady_clock::now(), 0);
}

/// rb([n], eq) = max_rainbow_free + 1; with enumerate_all_extremal the
/// extremal colorings are counted too. Both phases share one budget.
inline RbResult compute_rb(int n, const Equation& eq, const SearchLimits& limits = {},
                           const LeafObserver& observer = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto best = detail::max_rainbow_free_from(n, eq, limits, start, &observer);
  RbResult r;
  r.n = n;
  r.k = eq.k();
  r.max_rainbow_free_colors = best.max_colors;
  r.rb = best.max_colors + 1;
  r.witness = best.witness;
  r.stats = best.stats;
  r.status = best.status;
  if (r.complete() && limits.enumerate_all_extremal) {
    const auto ext = detail::colorings_with_from(n, eq, best.max_colors, limits, start,
                                                 best.stats.nodes_visited);
    r.stats.nodes_visited += ext.stats.nodes_visited;
    r.stats.prunes_by_rainbow += ext.stats.prunes_by_rainbow;
    r.stats.prunes_by_bound += ext.stats.prunes_by_bound;
    r.stats.prunes_by_structure += ext.stats.prunes_by_structure;
    if (ext.complete()) {
      r.extremal_count = ext.colorings.size();
    }
  }
  r.stats.wall_time = detail::elapsed_since(start);
  return r;
}

/// All extremal colorings (rainbow-free with rb - 1 colors), canonical and
/// lexicographically sorted. Aborted runs return a partial list.
inline ExtremalResult enumerate_extremal(int n, const Equation& eq, const SearchLimits& limits = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto best = detail::max_rainbow_free_from(n, eq, limits, start, nullptr);
  if (best.status != SearchStatus::complete) {
    ExtremalResult r;
    r.colors = best.max_colors;
    r.colorings.push_back(best.witness);
    r.stats = best.stats;
    r.status = best.status;
    return r;
  }
  auto r = detail::colorings_with_from(n, eq, best.max_colors, limits, start,
                                       best.stats.nodes_visited);
  r.stats.nodes_visited += best.stats.nodes_visited;
  r.stats.prunes_by_rainbow += best.stats.prunes_by_rainbow;
  r.stats.prunes_by_bound += best.stats.prunes_by_bound;
  r.stats.prunes_by_structure += best.stats.prunes_by_structure;
  return r;
}

/// True iff [n] has exactly one extremal coloring up to color renaming.
inline bool verify_unique_extremal(int n, const Equation& eq, const SearchLimits& limits = {}) {
  const auto r = enumerate_extremal(n, eq, limits);
  if (!r.complete()) {
    throw search_incomplete_error(r.status);
  }
  return r.colorings.size() == 1;
}

/// One result per n in [n_min, n_max]. Rows that hit limits are marked by
/// status; the sweep itself keeps going.
inline std::vector<RbResult> sweep(int n_min, int n_max, const Equation& eq, const SearchLimits& limits = {}) {
  if (n_min < 1 || n_min > n_max) {
    throw constraint_error("sweep needs 1 <= n_min <= n_max");
  }
  std::vector<RbResult> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    rows.push_back(compute_rb(n, eq, limits));
  }
  return rows;
}

} // namespace rainbow

#endif // RAINBOW_SEARCH_HPP
