// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include "rainbow/rainbow.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace {

using rainbow::Color;
using rainbow::Coloring;
using rainbow::Equation;
using rainbow::SearchLimits;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%s [%d] %s (%.2f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, title, secs, v.detail.empty() ? "" : " -- ",
              v.detail.c_str());
  std::fflush(stdout);
  failures += v.pass ? 0 : 1;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> as_ints(const Coloring& c) { return {c.assignment().begin(), c.assignment().end()}; }

Coloring random_exact(std::mt19937& rng, int n, int r) {
  std::vector<Color> a(static_cast<std::size_t>(n));
  std::uniform_int_distribution<Color> pick(0, static_cast<Color>(r - 1));
  for (auto& c : a) {
    c = pick(rng);
  }
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  for (int c = 0; c < r; ++c) {
    a[static_cast<std::size_t>(pos[static_cast<std::size_t>(c)])] = static_cast<Color>(c);
  }
  return Coloring(std::move(a));
}

// Rainbow-free colorings reached during the k=3 formula runs, for the
// first-occurrence bound check.
std::vector<Coloring> k3_discovered;

} // namespace

int main() {
  criterion(1, "k=3: compute_rb(n) == floor(log2 n) + 2 for n=3..22, single-threaded, < 60 s", [] {
    Verdict v;
    std::mutex mu;
    const rainbow::LeafObserver keep = [&](const Coloring& c) {
      std::lock_guard lock(mu);
      k3_discovered.push_back(c);
    };
    const auto t0 = Clock::now();
    for (int n = 3; n <= 22; ++n) {
      const auto r = rainbow::compute_rb(n, Equation(3), {}, keep);
      v.require(r.complete(), "n=" + std::to_string(n) + " did not complete");
      v.require(r.rb == rainbow::rb_formula_k3(n), "n=" + std::to_string(n) + " oracle " + std::to_string(r.rb) +
                                                       " formula " + std::to_string(rainbow::rb_formula_k3(n)));
    }
    v.require(seconds_since(t0) < 60.0, "runtime over 60 s");
    return v;
  });

  criterion(2, "k=4: compute_rb(n) == floor((n+7)/2) for n=5..16, < 300 s", [] {
    Verdict v;
    const auto t0 = Clock::now();
    for (int n = 5; n <= 16; ++n) {
      const auto r = rainbow::compute_rb(n, Equation(4));
      v.require(r.complete(), "n=" + std::to_string(n) + " did not complete");
      v.require(r.rb == rainbow::rb_formula_k4(n), "n=" + std::to_string(n) + " oracle " + std::to_string(r.rb));
    }
    v.require(seconds_since(t0) < 300.0, "runtime over 300 s");
    return v;
  });

  criterion(3, "k=4, odd n in {5..13}: exactly one extremal coloring, the staircase one for n >= 7", [] {
    Verdict v;
    for (int n : {5, 7, 9, 11, 13}) {
      const auto e = rainbow::enumerate_extremal(n, Equation(4));
      v.require(e.complete(), "n=" + std::to_string(n) + " did not complete");
      v.require(e.colorings.size() == 1,
                "n=" + std::to_string(n) + " has " + std::to_string(e.colorings.size()) + " extremal colorings");
      if (e.colorings.size() != 1) {
        continue;
      }
      if (n >= 7) {
        v.require(as_ints(e.colorings[0]) == as_ints(rainbow::staircase_coloring(n, 4)),
                  "n=" + std::to_string(n) + " extremal coloring is not the staircase coloring");
      } else {
        v.require(e.colorings[0] == Coloring::distinct(n), "n=5 extremal coloring is not all-distinct");
      }
    }
    const auto seven = rainbow::enumerate_extremal(7, Equation(4));
    v.require(!seven.colorings.empty() &&
                  seven.colorings[0].classes() == std::vector<std::vector<int>>{{1, 2}, {3}, {4}, {5}, {6}, {7}},
              "n=7 classes differ from {1,2}{3}{4}{5}{6}{7}");
    return v;
  });

  criterion(4, "trailing-zeros coloring rainbow-free for k=3 with floor(log2 n)+1 colors, n=1..2000, < 120 s", [] {
    Verdict v;
    const auto t0 = Clock::now();
    for (int n = 1; n <= 2000; ++n) {
      const Coloring c = rainbow::trailing_zeros_coloring(n);
      v.require(c.colors() == rainbow::floor_log2(static_cast<unsigned>(n)) + 1,
                "n=" + std::to_string(n) + " color count");
      const auto w = rainbow::find_rainbow_solution(c, Equation(3));
      v.require(!w, "n=" + std::to_string(n) + " rainbow solution " + (w ? w->to_string() : ""));
    }
    v.require(seconds_since(t0) < 120.0, "runtime over 120 s");
    return v;
  });

  criterion(5, "staircase rainbow-free with n-L+2 colors (k=4,5,6; n up to 200); lower bound <= completed rb", [] {
    Verdict v;
    for (int k = 4; k <= 6; ++k) {
      const Equation eq(k);
      for (int n = eq.min_solution_max(); n <= 200; ++n) {
        const Coloring c = rainbow::staircase_coloring(n, k);
        const int L = rainbow::staircase_threshold(n, k);
        const std::string at = "k=" + std::to_string(k) + " n=" + std::to_string(n);
        v.require(c.colors() == n - L + 2, at + " color count");
        v.require(rainbow::is_rainbow_free(c, eq), at + " has a rainbow solution");
      }
    }
    SearchLimits l;
    l.max_wall_time = std::chrono::seconds(5);
    int completed = 0;
    for (int k = 4; k <= 6; ++k) {
      for (int n = 1; n <= 24; ++n) {
        const auto r = rainbow::compute_rb(n, Equation(k), l);
        if (!r.complete()) {
          continue;
        }
        ++completed;
        const int lower = rainbow::general_lower_bound(n, k).general_lower;
        v.require(lower <= r.rb, "k=" + std::to_string(k) + " n=" + std::to_string(n) + " rb below lower bound");
      }
    }
    v.require(completed > 0, "no oracle run completed");
    v.detail += v.pass ? std::to_string(completed) + " oracle runs compared" : "";
    return v;
  });

  criterion(6, "pruned search == naive set-partition enumeration (n<=10, k=3,4,5); doubling prune on/off agree (k=3, n<=18)", [] {
    Verdict v;
    for (int k = 3; k <= 5; ++k) {
      for (int n = 1; n <= 10; ++n) {
        const auto want = oracle::naive_extremal(k, n);
        const auto got = rainbow::enumerate_extremal(n, Equation(k));
        std::vector<std::vector<int>> got_ints;
        for (const auto& c : got.colorings) {
          got_ints.push_back(as_ints(c));
        }
        const std::string at = "k=" + std::to_string(k) + " n=" + std::to_string(n);
        v.require(got.colors == want.max_colors, at + " max colors differ");
        v.require(got_ints == want.colorings, at + " extremal sets differ");
      }
    }
    for (int n = 1; n <= 18; ++n) {
      SearchLimits on;
      on.enumerate_all_extremal = true;
      on.lemma5_prune = true;
      SearchLimits off = on;
      off.lemma5_prune = false;
      const auto a = rainbow::compute_rb(n, Equation(3), on);
      const auto b = rainbow::compute_rb(n, Equation(3), off);
      v.require(a.rb == b.rb && as_ints(a.witness) == as_ints(b.witness) && a.extremal_count == b.extremal_count,
                "doubling prune changed the result at n=" + std::to_string(n));
    }
    return v;
  });

  criterion(7, "max_b1 == brute-force tuple oracle for n<=60, 2<=ell<=6", [] {
    Verdict v;
    for (int ell = 2; ell <= 6; ++ell) {
      for (int n = 1; n <= 60; ++n) {
        v.require(rainbow::max_b1(n, ell) == oracle::max_b1(n, ell),
                  "n=" + std::to_string(n) + " ell=" + std::to_string(ell));
      }
    }
    return v;
  });

  criterion(8, "k=5, n=9..13: compute_rb and enumerate_extremal complete within 30 min", [] {
    Verdict v;
    const auto t0 = Clock::now();
    std::string data;
    for (int n = 9; n <= 13; ++n) {
      SearchLimits l;
      l.enumerate_all_extremal = true;
      const auto r = rainbow::compute_rb(n, Equation(5), l);
      const auto e = rainbow::enumerate_extremal(n, Equation(5));
      v.require(r.complete() && e.complete(), "n=" + std::to_string(n) + " did not complete");
      v.require(r.extremal_count == e.colorings.size(), "n=" + std::to_string(n) + " extremal counts disagree");
      v.require(r.rb >= rainbow::general_lower_bound(n, 5).general_lower, "n=" + std::to_string(n) + " below bound");
      data += " n=" + std::to_string(n) + ":rb=" + std::to_string(r.rb) + ",extremal=" +
              std::to_string(e.colorings.size());
    }
    v.require(seconds_since(t0) < 1800.0, "runtime over 30 min");
    std::printf("     k=5 data:%s\n", data.c_str());
    for (int n : {9, 12}) {
      const bool unique = rainbow::verify_unique_extremal(n, Equation(5));
      std::printf("     k=5 n=%d unique extremal coloring: %s (expected from prior data: yes)%s\n", n,
                  unique ? "yes" : "no", unique ? "" : "  ** disagreement recorded **");
    }
    return v;
  });

  criterion(9, "properties: permutation invariance, canonicalize idempotence, first-occurrence bounds, file round-trip", [] {
    Verdict v;
    std::mt19937 rng(20261014);
    for (int trial = 0; trial < 1000; ++trial) {
      const int k = 3 + static_cast<int>(rng() % 3);
      const int n = Equation(k).min_solution_max() + static_cast<int>(rng() % 20);
      const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
      const Coloring c = random_exact(rng, n, r);
      std::vector<Color> perm(static_cast<std::size_t>(r));
      std::iota(perm.begin(), perm.end(), 0U);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Color> permuted;
      for (Color col : c.assignment()) {
        permuted.push_back(perm[col]);
      }
      const Coloring pc(std::move(permuted));
      const auto sols = rainbow::enumerate_solutions(Equation(k), n);
      const auto& s = sols[rng() % sols.size()];
      v.require(rainbow::is_rainbow(c, s) == rainbow::is_rainbow(pc, s), "is_rainbow not permutation invariant");
    }
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 50);
      const Coloring c = random_exact(rng, n, 1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
      const Coloring once = rainbow::canonicalize(c);
      v.require(as_ints(rainbow::canonicalize(once)) == as_ints(once) && once.is_canonical(),
                "canonicalize not idempotent");
    }
    v.require(!k3_discovered.empty(), "no k=3 colorings recorded by criterion 1");
    for (const auto& c : k3_discovered) {
      v.require(rainbow::check_s_bounds(c), "s-bounds fail on " + c.to_string());
    }
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 80);
      const Coloring c = random_exact(rng, n, 1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
      const std::string text = rainbow::format_coloring(c);
      const Coloring back = rainbow::parse_coloring(text);
      v.require(as_ints(back) == as_ints(c) && rainbow::format_coloring(back) == text, "file round-trip differs");
    }
    v.detail += v.pass ? std::to_string(k3_discovered.size()) + " k=3 colorings checked" : "";
    return v;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
