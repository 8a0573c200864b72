#include "latshape/exactalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latshape;

namespace {

// gcd of all j x j minors, by brute force over row and column subsets
Integer minor_gcd(const IntMatrix &M, std::size_t j) {
  Integer g = 0;
  std::size_t r = M.rows(), c = M.cols();
  std::vector<bool> rs(r), cs(c);
  std::fill(rs.begin(), rs.begin() + static_cast<long>(j), true);
  do {
    std::fill(cs.begin(), cs.end(), false);
    std::fill(cs.begin(), cs.begin() + static_cast<long>(j), true);
    do {
      IntMatrix S(j, j);
      std::size_t a = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (!rs[i]) continue;
        std::size_t b = 0;
        for (std::size_t l = 0; l < c; ++l)
          if (cs[l]) S(a, b++) = M(i, l);
        ++a;
      }
      g = gcd(g, det(S));
    } while (std::prev_permutation(cs.begin(), cs.end()));
  } while (std::prev_permutation(rs.begin(), rs.end()));
  return g;
}

IntMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> u(-range, range);
  IntMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = u(rng);
  return M;
}

} // namespace

TEST(Rational, CanonicalForm) {
  Rational r = parse_rational("6/-4");
  EXPECT_EQ(numerator(r), -3);
  EXPECT_EQ(denominator(r), 2);
  EXPECT_EQ(to_string(parse_rational("10/5")), std::string("2"));
  EXPECT_THROW(parse_rational("1/0"), MathError);
}

TEST(Hnf, SmallExample) {
  // rows (2,4),(1,3) span the lattice with basis (1,1),(0,2)
  HnfResult h = hnf(IntMatrix{{2, 4}, {1, 3}});
  EXPECT_EQ(h.H, (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(h.U * IntMatrix({{2, 4}, {1, 3}}), h.H);
}

TEST(Hnf, RandomMatricesAreReducedAndEquivalent) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 2 + t % 3, c = 2 + (t / 3) % 3;
    IntMatrix M = random_matrix(rng, r, c, 6);
    HnfResult h = hnf(M);
    ASSERT_EQ(h.U * M, h.H);
    ASSERT_EQ(abs(det(h.U)), 1);
    // pivots positive, entries above pivots reduced
    std::size_t col = 0;
    for (std::size_t i = 0; i < h.H.rows(); ++i) {
      while (col < c && h.H(i, col) == 0) ++col;
      if (col == c) break;
      ASSERT_GT(h.H(i, col), 0);
      for (std::size_t a = 0; a < i; ++a) {
        ASSERT_GE(h.H(a, col), 0);
        ASSERT_LT(h.H(a, col), h.H(i, col));
      }
      ++col;
    }
  }
}

TEST(Snf, DiagonalExample) {
  SnfResult s = snf(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.d, (IntVector{1, 6}));
  EXPECT_EQ(snf(IntMatrix{{4, 0}, {0, 6}}).d, (IntVector{2, 12}));
}

TEST(Snf, MatchesMinorGcdOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 120; ++t) {
    std::size_t r = 2 + t % 2, c = 2 + (t / 2) % 3;
    IntMatrix M = random_matrix(rng, r, c, 9);
    SnfResult s = snf(M);
    IntMatrix D(r, c);
    for (std::size_t j = 0; j < s.d.size(); ++j) D(j, j) = s.d[j];
    ASSERT_EQ(s.U * M * s.V, D);
    Integer prev = 1;
    for (std::size_t j = 0; j < s.d.size(); ++j) {
      Integer g = minor_gcd(M, j + 1);
      if (g == 0) {
        ASSERT_EQ(s.d[j], 0);
        continue;
      }
      ASSERT_EQ(s.d[j] * prev, g) << "j=" << j;
      prev = g;
    }
  }
}

TEST(Kernel, RowsAreAnnihilatedAndSaturated) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    IntMatrix M = random_matrix(rng, 2, 5, 4);
    IntMatrix K = integer_kernel(M);
    ASSERT_EQ(K.rows(), 5 - rank(M));
    IntMatrix prod = M * K.transpose();
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j) ASSERT_EQ(prod(i, j), 0);
    ASSERT_TRUE(is_primitive(K));
  }
}

TEST(Saturate, SpanAndPrimitivity) {
  EXPECT_EQ(saturate(IntMatrix{{2, 4, 0}}), (IntMatrix{{1, 2, 0}}));
  EXPECT_EQ(saturate(IntMatrix{{1, 1}, {1, -1}}), IntMatrix::identity(2));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    IntMatrix B = random_matrix(rng, 2, 4, 5);
    if (rank(B) < 2) continue;
    IntMatrix S = saturate(B);
    ASSERT_TRUE(is_primitive(S));
    ASSERT_TRUE(lattice_contains(to_rational(S), to_rational(B)));
    ASSERT_EQ(S, saturate(S));
  }
}

TEST(Quotients, FiniteQuotientInvariants) {
  EXPECT_EQ(quotient_order(RatMatrix{{1, 2}, {0, 5}}, RatMatrix::identity(2)), 5);
  IntVector q = quotient_invariants(IntMatrix{{2, 0}, {0, 4}}, IntMatrix::identity(2));
  EXPECT_EQ(q, (IntVector{2, 4}));
  EXPECT_TRUE(same_lattice(RatMatrix{{1, 1}, {0, 2}}, RatMatrix{{1, -1}, {2, 0}}));
}

TEST(Completion, UnimodularCompletionOfPrimitiveRows) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    IntMatrix R = random_matrix(rng, 2, 5, 4);
    if (rank(R) < 2) continue;
    IntMatrix B = saturate(R);
    IntMatrix U = complete_to_unimodular(B);
    ASSERT_EQ(abs(det(U)), 1);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 5; ++j) ASSERT_EQ(U(i, j), B(i, j));
  }
}
