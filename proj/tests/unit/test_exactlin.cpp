#include "covol/exactlin.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace covol;

namespace {

SparseVector vec(std::initializer_list<long long> xs) {
  SparseVector v;
  std::size_t i = 0;
  for (auto x : xs) v.add(i++, Rational(x));
  return v;
}

std::vector<BigInt> diag(std::initializer_list<long long> xs) {
  std::vector<BigInt> d;
  for (auto x : xs) d.emplace_back(x);
  return d;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(toString(parseRational("6/4")), "3/2");
  EXPECT_EQ(toString(parseRational("-7")), "-7");
  EXPECT_EQ(toString(Rational(0)), "0");
  EXPECT_THROW(parseRational("1/0"), std::invalid_argument);
  EXPECT_THROW(parseRational("abc"), std::invalid_argument);
}

TEST(SparseVector, NeverStoresZeros) {
  SparseVector v = SparseVector::unit(3, 2);
  v.add(3, -2);
  EXPECT_TRUE(v.empty());
  v.set(1, 0);
  EXPECT_TRUE(v.empty());
  EXPECT_EQ(vec({1, 0, 2}).size(), 2u);
}

TEST(Rref, HandEliminationExample) {
  const std::vector<SparseVector> rows{vec({1, 1, 0}), vec({0, 1, 1})};
  const auto s = rref(rows);
  ASSERT_EQ(s.dimension(), 2u);
  EXPECT_EQ(s.rows()[0], vec({1, 0, -1}));
  EXPECT_EQ(s.rows()[1], vec({0, 1, 1}));
  EXPECT_EQ(s.pivots(), (std::vector<std::size_t>{0, 1}));
}

TEST(Rref, EmptyAndScaling) {
  EXPECT_EQ(rref(std::vector<SparseVector>{}).dimension(), 0u);
  const std::vector<SparseVector> rows{vec({2, 4})};
  const auto s = rref(rows);
  ASSERT_EQ(s.dimension(), 1u);
  EXPECT_EQ(s.rows()[0], vec({1, 2}));
}

TEST(Rref, Idempotent) {
  const std::vector<SparseVector> rows{vec({3, 1, 4}), vec({1, 5, 9}), vec({2, 6, 5}), vec({4, 6, 13})};
  const auto s = rref(rows);
  EXPECT_EQ(rref(s.rows()), s);
}

TEST(Member, Examples) {
  const std::vector<SparseVector> rows{vec({1, 0, -1}), vec({0, 1, 1})};
  const auto s = rref(rows);
  EXPECT_TRUE(member(s, vec({1, 1, 0})));
  EXPECT_TRUE(member(s, SparseVector{}));
  const std::vector<SparseVector> line{vec({1, 2})};
  EXPECT_FALSE(member(rref(line), vec({1, 3})));
}

TEST(Smith, Examples) {
  EXPECT_EQ(smithNormalForm(IntMatrix::fromRows({{2, 0}, {0, 3}})).diagonal, diag({1, 6}));
  EXPECT_EQ(smithNormalForm(IntMatrix::identity(3)).diagonal, diag({1, 1, 1}));
  EXPECT_EQ(smithNormalForm(IntMatrix::fromRows({{1, -1}})).diagonal, diag({1}));
}

TEST(Smith, ReconstructionAndUnimodularity) {
  const auto m = IntMatrix::fromRows({{4, 6, 2}, {2, 8, 0}, {6, 14, 2}});
  const auto d = smithNormalForm(m);
  const auto prod = d.left * m * d.right;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(prod(r, c), r == c ? d.diagonal[r] : BigInt(0));
  EXPECT_EQ(abs(determinant(d.left)), 1);
  EXPECT_EQ(abs(determinant(d.right)), 1);
  for (std::size_t i = 0; i + 1 < d.diagonal.size(); ++i)
    if (d.diagonal[i] != 0) {
      EXPECT_EQ(d.diagonal[i + 1] % d.diagonal[i], 0);
    }
}

TEST(BlockPartition, Examples) {
  const std::vector<SparseVector> split{vec({1, 1, 0}), vec({0, 0, 1})};
  EXPECT_EQ(finestBlockPartition(rref(split)), (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
  const std::vector<SparseVector> joined{vec({1, 1, 0}), vec({0, 1, 1})};
  EXPECT_EQ(finestBlockPartition(rref(joined)), (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
  EXPECT_TRUE(finestBlockPartition(Subspace{}).empty());
}

TEST(BlockPartition, MatchesBruteForceOnExamples) {
  const std::vector<SparseVector> rows{vec({1, 1, 0, 0, 0}), vec({0, 0, 1, 0, 2}), vec({0, 0, 0, 1, 0})};
  const auto s = rref(rows);
  const auto blocks = finestBlockPartition(s);
  const std::set<std::vector<std::size_t>> got(blocks.begin(), blocks.end());
  EXPECT_EQ(got, test::bruteForcePartition(rows, 5));
}

TEST(Inverse, TwoByTwo) {
  const RationalMatrix m{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  const auto inv = inverse(m);
  ASSERT_TRUE(inv);
  EXPECT_EQ((*inv)[0][0], 1);
  EXPECT_EQ((*inv)[0][1], -1);
  EXPECT_EQ((*inv)[1][1], 2);
  EXPECT_FALSE(inverse(RationalMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}));
}
