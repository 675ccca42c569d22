#include "rainbow/coloring.hpp"
#include "rainbow/coloring_io.hpp"
#include "rainbow/constructions.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace {

using rainbow::Color;
using rainbow::Coloring;
using rainbow::Equation;
using rainbow::Solution;

std::vector<Color> raw(const Coloring& c) { return {c.assignment().begin(), c.assignment().end()}; }

// Example 2's coloring of [5], 1-based labels (1,2,1,3,1).
Coloring example_two() { return Coloring::from_one_based({1, 2, 1, 3, 1}); }

Coloring random_exact(std::mt19937& rng, int n, int r) {
  std::vector<Color> a(static_cast<std::size_t>(n));
  std::uniform_int_distribution<Color> pick(0, static_cast<Color>(r - 1));
  for (auto& c : a) {
    c = pick(rng);
  }
  // force every color to appear somewhere
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  for (int c = 0; c < r; ++c) {
    a[static_cast<std::size_t>(pos[static_cast<std::size_t>(c)])] = static_cast<Color>(c);
  }
  return Coloring(std::move(a));
}

TEST(Coloring, RejectsNonExactAssignments) {
  EXPECT_THROW(Coloring({0, 2, 0}), rainbow::constraint_error);
  EXPECT_THROW(Coloring(std::vector<Color>{}), rainbow::constraint_error);
  EXPECT_THROW(Coloring::from_one_based({0, 1}), rainbow::constraint_error);
  EXPECT_EQ(Coloring({1, 0, 1}).colors(), 2);
}

TEST(Coloring, ColorOfIsOneBasedPosition) {
  const Coloring c = example_two();
  EXPECT_EQ(c.color_of(1), 0U);
  EXPECT_EQ(c.color_of(4), 2U);
  EXPECT_THROW(c.color_of(0), rainbow::constraint_error);
  EXPECT_THROW(c.color_of(6), rainbow::constraint_error);
}

TEST(Coloring, EqualityIsPartitionEquality) {
  EXPECT_EQ(Coloring({1, 0, 1}), Coloring({0, 1, 0}));
  EXPECT_NE(Coloring({0, 0, 1}), Coloring({0, 1, 0}));
  EXPECT_NE(Coloring({0, 0}), Coloring({0, 0, 0}));
}

TEST(Canonicalize, RelabelsByFirstAppearance) {
  EXPECT_EQ(raw(rainbow::canonicalize(Coloring::from_one_based({2, 1, 2}))), (std::vector<Color>{0, 1, 0}));
  EXPECT_EQ(raw(rainbow::canonicalize(Coloring::from_one_based({3, 1, 2, 3}))), (std::vector<Color>{0, 1, 2, 0}));
  const Coloring canon({0, 1, 0, 2});
  EXPECT_EQ(raw(rainbow::canonicalize(canon)), raw(canon));
  EXPECT_TRUE(rainbow::canonicalize(Coloring({2, 0, 1, 2})).is_canonical());
}

TEST(Canonicalize, IdempotentOnRandomColorings) {
  std::mt19937 rng(20261014);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const Coloring c = random_exact(rng, n, r);
    const Coloring once = rainbow::canonicalize(c);
    EXPECT_TRUE(once.is_canonical());
    EXPECT_EQ(raw(rainbow::canonicalize(once)), raw(once));
    EXPECT_EQ(once.classes().size(), c.classes().size());
    EXPECT_EQ(once, c);
  }
}

TEST(FirstOccurrences, Examples) {
  EXPECT_EQ(rainbow::first_occurrences(rainbow::trailing_zeros_coloring(8)), (std::vector<int>{1, 2, 4, 8}));
  EXPECT_EQ(rainbow::first_occurrences(Coloring::monochrome(7)), (std::vector<int>{1}));
  // staircase(9, 4) with L = 4
  EXPECT_EQ(rainbow::first_occurrences(rainbow::staircase_coloring(9, 4)), (std::vector<int>{1, 4, 5, 6, 7, 8, 9}));
  EXPECT_THROW(rainbow::first_occurrences(Coloring({1, 0})), rainbow::constraint_error);
}

TEST(IsRainbow, Examples) {
  EXPECT_FALSE(rainbow::is_rainbow(example_two(), Solution({1, 2, 3})));
  EXPECT_FALSE(rainbow::is_rainbow(Coloring::monochrome(6), Solution({1, 2, 3, 6})));
  EXPECT_TRUE(rainbow::is_rainbow(Coloring::distinct(3), Solution({1, 2, 3})));
  EXPECT_THROW(rainbow::is_rainbow(Coloring::distinct(3), Solution({1, 3, 4})), rainbow::constraint_error);
}

TEST(IsRainbow, InvariantUnderColorPermutation) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 3);
    const int n = Equation(k).min_solution_max() + static_cast<int>(rng() % 15);
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
    EXPECT_EQ(rainbow::is_rainbow(c, s), rainbow::is_rainbow(pc, s));
  }
}

TEST(FindRainbowSolution, Examples) {
  EXPECT_FALSE(rainbow::find_rainbow_solution(example_two(), Equation(3)));
  EXPECT_EQ(rainbow::find_rainbow_solution(Coloring::distinct(5), Equation(3)), Solution({1, 2, 3}));
  EXPECT_FALSE(rainbow::find_rainbow_solution(rainbow::trailing_zeros_coloring(7), Equation(3)));
  EXPECT_FALSE(rainbow::find_rainbow_solution(Coloring::distinct(5), Equation(4)));
}

TEST(FindRainbowSolution, AgreesWithExhaustiveScan) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 30);
    // few colors so rainbow-free colorings show up often
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n, k + 2)));
    const Coloring c = random_exact(rng, n, r);
    const auto sols = rainbow::enumerate_solutions(Equation(k), n);
    std::optional<Solution> first;
    for (const auto& s : sols) {
      if (rainbow::is_rainbow(c, s)) {
        first = s;
        break;
      }
    }
    std::vector<int> zero_based(c.assignment().begin(), c.assignment().end());
    EXPECT_EQ(!first, oracle::rainbow_free(zero_based, oracle::solutions(k, n)));
    EXPECT_EQ(rainbow::find_rainbow_solution(c, Equation(k)), first);
  }
}

TEST(ColoringIo, WritesHeaderAndOneBasedColors) {
  EXPECT_EQ(rainbow::format_coloring(example_two()), "n=5 r=3\n1 2 1 3 1\n");
  EXPECT_EQ(rainbow::format_coloring(rainbow::trailing_zeros_coloring(8)), "n=8 r=4\n1 2 1 3 1 2 1 4\n");
}

TEST(ColoringIo, ParsesAnyWhitespace) {
  const Coloring c = rainbow::parse_coloring("n=5 r=3\n1 2\n1\t3 1\n");
  EXPECT_EQ(raw(c), raw(example_two()));
}

TEST(ColoringIo, RejectsMalformedFiles) {
  using rainbow::parse_coloring;
  using rainbow::parse_error;
  EXPECT_THROW(parse_coloring(""), parse_error);
  EXPECT_THROW(parse_coloring("n=3\n1 1 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=3 r=1 x\n1 1 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("m=3 r=1\n1 1 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=3 r=1\n1 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=3 r=1\n1 1 1 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=3 r=2\n1 3 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=3 r=2\n1 a 1\n"), parse_error);
  EXPECT_THROW(parse_coloring("n=0 r=1\n"), parse_error);
  try {
    parse_coloring("n=3 r=3\n1 2 2\n");
    FAIL() << "non-onto coloring accepted";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("not exact"), std::string::npos);
  }
}

TEST(ColoringIo, RoundTripIsByteStable) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 60);
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const Coloring c = random_exact(rng, n, r);
    const std::string text = rainbow::format_coloring(c);
    const Coloring back = rainbow::parse_coloring(text);
    EXPECT_EQ(raw(back), raw(c));
    EXPECT_EQ(rainbow::format_coloring(back), text);
  }
}

} // namespace
