#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace tmseq;
using namespace tmseq::kernel;

namespace {

std::vector<symbol> prefix_of(morphic_stream s, std::size_t n) { return s.prefix(n).letters(); }

template <class T>
std::span<const T> sp(const std::vector<T>& v) {
  return std::span<const T>(v);
}

}  // namespace

TEST(Kernel, ConstantSequenceHasOneElement) {
  std::vector<int> c(1 << 12, 7);
  auto rep = explore_kernel(sp(c), 3, 5, 16);
  EXPECT_EQ(rep.count(), 1u);
  EXPECT_TRUE(rep.closed);
  EXPECT_EQ(rep.explored_depth, 1u);
}

TEST(Kernel, ThueMorseHasTwoElements) {
  std::vector<int> t(1 << 14);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = oracle::tm(i);
  auto rep = explore_kernel(sp(t), 2, 6, 64);
  EXPECT_EQ(rep.count(), 2u);
  EXPECT_TRUE(rep.closed);
}

TEST(Kernel, AIsClosedAtDepthEight) {
  auto a = prefix_of(catalog::ternary_A(), kernel_prefix_needed(2, 8, 1 << 10));
  auto rep = explore_kernel(sp(a), 2, 8, 1 << 10);
  EXPECT_TRUE(rep.closed);
  EXPECT_EQ(rep.count(), 5u);  // regression value from this implementation
  for (std::size_t L : {256u, 4096u}) {
    auto b = prefix_of(catalog::ternary_A(), kernel_prefix_needed(2, 8, L));
    EXPECT_EQ(explore_kernel(sp(b), 2, 8, L).count(), 5u) << L;
  }
}

TEST(Kernel, AbarIsClosedAtDepthEight) {
  auto a = prefix_of(catalog::berstel_Abar(), kernel_prefix_needed(2, 8, 1 << 10));
  auto rep = explore_kernel(sp(a), 2, 8, 1 << 10);
  EXPECT_TRUE(rep.closed);
}

TEST(Kernel, BCountGrowsWithFingerprintLength) {
  std::size_t prev = 0;
  for (std::size_t L : {256u, 1024u, 4096u}) {
    auto b = prefix_of(catalog::gap_B(), kernel_prefix_needed(2, 8, L));
    auto rep = explore_kernel(sp(b), 2, 8, L);
    EXPECT_GT(rep.count(), prev) << L;
    EXPECT_GT(rep.count(), 5u);
    prev = rep.count();
  }
}

TEST(Kernel, ReportCountsAreConsistent) {
  auto b = prefix_of(catalog::gap_B(), kernel_prefix_needed(2, 6, 64));
  auto rep = explore_kernel(sp(b), 2, 6, 64);
  std::size_t sum = 0;
  for (std::size_t j = 0; j < rep.new_per_depth.size(); ++j) {
    sum += rep.new_per_depth[j];
    EXPECT_EQ(rep.total_per_depth[j], sum);
  }
  EXPECT_EQ(sum, rep.count());
  for (const auto& e : rep.elements) EXPECT_LT(e.offset, std::uint64_t{1} << e.depth);
}

TEST(Kernel, ShortPrefixIsABudgetError) {
  std::vector<int> c(100, 0);
  EXPECT_THROW(explore_kernel(sp(c), 2, 8, 16), budget_exceeded);
  EXPECT_THROW(explore_kernel(sp(c), 1, 1, 16), domain_error);
}

TEST(Squares, Trivial) {
  std::vector<char> aa{'a', 'a'};
  auto sq = first_square(sp(aa));
  ASSERT_TRUE(sq);
  EXPECT_EQ(*sq, (square{0, 1}));
}

TEST(Squares, LeftmostThenShortest) {
  std::string s = "abcabcbb";
  std::vector<char> v(s.begin(), s.end());
  auto sq = first_square(sp(v));
  ASSERT_TRUE(sq);
  EXPECT_EQ(*sq, (square{0, 3}));
  std::string s2 = "abab";
  std::vector<char> v2(s2.begin(), s2.end());
  EXPECT_EQ(*first_square(sp(v2)), (square{0, 2}));
}

TEST(Squares, AgreeWithOracle) {
  auto b = prefix_of(catalog::gap_B(), 600);
  std::string s;
  for (auto x : b) s += static_cast<char>('0' + x);
  auto lib = all_squares(sp(b), 64);
  auto ora = oracle::squares(s, 64);
  ASSERT_EQ(lib.size(), ora.size());
  for (std::size_t i = 0; i < lib.size(); ++i) {
    EXPECT_EQ(lib[i].index, ora[i].first);
    EXPECT_EQ(lib[i].half, ora[i].second);
  }
}

TEST(Squares, AAndBbarAreSquarefree) {
  auto a = prefix_of(catalog::ternary_A(), 1 << 12);
  EXPECT_TRUE(is_squarefree(sp(a)));
  auto bb = prefix_of(catalog::bbar(), 1 << 12);
  EXPECT_TRUE(is_squarefree(sp(bb)));
}

TEST(Squares, BHasOnlyShortSquares) {
  auto b = prefix_of(catalog::gap_B(), 1 << 12);
  auto sq = all_squares(sp(b));
  EXPECT_FALSE(sq.empty());
  for (const auto& s : sq) EXPECT_EQ(s.half, 1u) << s.index;
}

TEST(ArithWitness, Examples) {
  auto b = prefix_of(catalog::gap_B(), 64);
  EXPECT_EQ(distinct_arith_witness(sp(b), 2, 0, 1, 100), 1u);
  std::vector<int> c(1000, 5);
  EXPECT_FALSE(distinct_arith_witness(sp(c), 3, 0, 2, 100));
  EXPECT_THROW(distinct_arith_witness(sp(c), 3, 2, 2, 10), domain_error);
  EXPECT_THROW(distinct_arith_witness(sp(c), 3, 0, 1, 10000), budget_exceeded);
}

TEST(ArithWitness, BAndCheckBForModuliUpTo16) {
  auto b = prefix_of(catalog::gap_B(), 16 * 100001 + 16);
  auto c = catalog::check_B_prefix(16 * 100001 + 16).letters();
  for (std::uint64_t m = 2; m <= 16; ++m) {
    for (std::uint64_t l1 = 0; l1 < m; ++l1) {
      for (std::uint64_t l2 = l1 + 1; l2 < m; ++l2) {
        EXPECT_TRUE(distinct_arith_witness(sp(b), m, l1, l2, 100000)) << m << " " << l1 << " " << l2;
        EXPECT_TRUE(distinct_arith_witness(sp(c), m, l1, l2, 100000)) << m << " " << l1 << " " << l2;
      }
    }
  }
}
