#include "latshape/isometry.hpp"
#include "latshape/moduli.hpp"
#include "latshape/shapes.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latshape;

namespace {

IntMatrix random_unimodular(std::size_t k, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> u(-2, 2);
  IntMatrix U = IntMatrix::identity(k);
  for (int s = 0; s < 6; ++s) {
    std::size_t i = static_cast<std::size_t>(rng() % k), j = static_cast<std::size_t>(rng() % k);
    if (i == j) continue;
    int f = u(rng);
    for (std::size_t c = 0; c < k; ++c) U(i, c) += f * U(j, c);
  }
  return U;
}

IntMatrix random_pd_gram(std::size_t k, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> u(-2, 2);
  while (true) {
    IntMatrix X(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) X(i, j) = u(rng);
    if (det(X) != 0) return X * X.transpose();
  }
}

// the reduced Gram of minimal (a, c) found over all unimodular 2x2 matrices with entries in [-3, 3]
IntMatrix brute_gauss(const IntMatrix &G) {
  IntMatrix best;
  for (int p = -3; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q)
      for (int r = -3; r <= 3; ++r)
        for (int s = -3; s <= 3; ++s) {
          if (std::abs(p * s - q * r) != 1) continue;
          IntMatrix U{{p, q}, {r, s}};
          IntMatrix H = U * G * U.transpose();
          if (H(0, 1) < 0 || H(0, 1) > H(0, 0) || H(0, 0) > H(1, 1) || 2 * H(0, 1) > H(0, 0)) continue;
          if (best.rows() == 0 || H.data() < best.data()) best = H;
        }
  return best;
}

const std::vector<QuadraticForm> &moduli_forms() {
  static const std::vector<QuadraticForm> f{QuadraticForm::sum_of_squares(5), QuadraticForm::sum_of_squares(6),
                                            QuadraticForm::diagonal({1, 2, 3, 1, 1}),
                                            QuadraticForm(IntMatrix{{2, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {0, 1, 2, 1, 0}, {0, 0, 1, 2, 1}, {0, 0, 0, 1, 2}})};
  return f;
}

} // namespace

TEST(Gauss, Examples) {
  EXPECT_EQ(gauss_reduce(IntMatrix{{5, 1}, {1, 5}}), (IntMatrix{{5, 1}, {1, 5}}));
  // (5, 4, 5) -> b - a = -1, c = 5 - 8 + 5 = 2, swap: (2, 1, 5) then 2b <= a
  EXPECT_EQ(gauss_reduce(IntMatrix{{5, 4}, {4, 5}}), (IntMatrix{{2, 1}, {1, 5}}));
  EXPECT_EQ(gauss_reduce(IntMatrix{{3, -1}, {-1, 2}}), (IntMatrix{{2, 1}, {1, 3}}));
  EXPECT_THROW(gauss_reduce(IntMatrix{{1, 2}, {2, 1}}), MathError);
}

TEST(Gauss, MatchesBruteForceOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 150; ++t) {
    IntMatrix G = random_pd_gram(2, rng);
    IntMatrix red = gauss_reduce(G);
    ASSERT_EQ(red, gauss_reduce(red));
    // the reduced form is the brute force minimum when the search box is large enough to reach it
    IntMatrix b = brute_gauss(red);
    ASSERT_EQ(b.rows(), 2u);
    ASSERT_EQ(b(0, 0), red(0, 0));
    ASSERT_EQ(b(1, 1), red(1, 1));
    ASSERT_EQ(std::abs(to_ll(b(0, 1))), std::abs(to_ll(red(0, 1))));
  }
}

TEST(UpperHalf, Examples) {
  UpperHalfPoint z = upper_half_point(IntMatrix::identity(2));
  EXPECT_NEAR(z.x, 0, 1e-12);
  EXPECT_NEAR(z.y, 1, 1e-12);
  UpperHalfPoint w = upper_half_point(IntMatrix{{5, 1}, {1, 5}});
  EXPECT_NEAR(w.x, -0.2, 1e-12);
  EXPECT_NEAR(w.y, std::sqrt(24.0) / 5, 1e-12);
  EXPECT_NEAR(w.x * w.x + w.y * w.y, 1, 1e-12);
  UpperHalfPoint s = upper_half_point(IntMatrix{{15, 3}, {3, 15}});
  EXPECT_NEAR(s.x, w.x, 1e-12);
  EXPECT_NEAR(s.y, w.y, 1e-12);
}

TEST(UpperHalf, ReducedAndInvariant) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    IntMatrix G = random_pd_gram(2, rng);
    UpperHalfPoint z = upper_half_point(G);
    ASSERT_LE(std::abs(z.x), 0.5 + 1e-12);
    ASSERT_GE(z.x * z.x + z.y * z.y, 1 - 1e-12);
    IntMatrix U = random_unimodular(2, rng);
    UpperHalfPoint w = upper_half_point(U * G * U.transpose());
    ASSERT_NEAR(z.x, w.x, 1e-9);
    ASSERT_NEAR(z.y, w.y, 1e-9);
  }
}

TEST(Shape, Examples) {
  ShapeClass s = shape_of_gram(to_rational(IntMatrix::identity(3).scaled(Integer(5))));
  EXPECT_EQ(s.canonical, IntMatrix::identity(3));
  EXPECT_EQ(s.scale, 5);
  ShapeClass b = shape_of_gram(RatMatrix{{5, 1}, {1, 5}});
  EXPECT_EQ(b.canonical, (IntMatrix{{5, 1}, {1, 5}}));
}

TEST(Shape, InvariantUnderBasisChangeAndScaling) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 120; ++t) {
    std::size_t k = 2 + t % 3;
    IntMatrix G = random_pd_gram(k, rng);
    IntMatrix U = random_unimodular(k, rng);
    ShapeClass a = shape_of_gram(to_rational(G));
    ShapeClass b = shape_of_gram(to_rational(U * G * U.transpose()).scaled(Rational(3) / 7));
    ASSERT_EQ(a.canonical, b.canonical) << G;
    ASSERT_EQ(content(a.canonical), 1);
  }
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(forms_equivalent(IntMatrix{{2, 1}, {1, 3}}, IntMatrix{{2, -1}, {-1, 3}}));
  EXPECT_FALSE(forms_equivalent(IntMatrix::identity(2), IntMatrix{{1, 0}, {0, 2}}));
  EXPECT_FALSE(forms_equivalent(IntMatrix{{2, 1}, {1, 4}}, IntMatrix{{1, 0}, {0, 7}}));
}

TEST(Equivalence, AgreesWithCanonicalForms) {
  std::mt19937_64 rng(41);
  std::vector<IntMatrix> grams;
  for (int t = 0; t < 40; ++t) grams.push_back(random_pd_gram(3, rng));
  for (std::size_t i = 0; i < grams.size(); ++i) {
    IntMatrix U = random_unimodular(3, rng);
    ASSERT_TRUE(forms_equivalent(grams[i], U * grams[i] * U.transpose()));
    for (std::size_t j = i + 1; j < grams.size(); ++j) {
      if (det(grams[i]) != det(grams[j])) continue;
      ASSERT_EQ(forms_equivalent(grams[i], grams[j]), canonical_form(grams[i]) == canonical_form(grams[j]));
    }
  }
}

TEST(Grassmann, ProjectionMatrices) {
  QuadraticForm Q3 = QuadraticForm::sum_of_squares(3);
  Mat P = grassmann_coordinates(Q3, Subspace::span({{1, 2, 0}}));
  Eigen::Vector3d v(1, 2, 0);
  EXPECT_LT((P - v * v.transpose() / 5).cwiseAbs().maxCoeff(), 1e-12);
  QuadraticForm D = QuadraticForm::diagonal({1, 2, 3});
  Mat E = grassmann_coordinates(D, Subspace::span({{1, 0, 0}, {0, 1, 0}}));
  EXPECT_LT((E - Eigen::Vector3d(1, 1, 0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> u(-3, 3);
  for (auto &Q : moduli_forms())
    for (int t = 0; t < 10; ++t) {
      std::size_t n = Q.dim(), k = 1 + t % (n - 1);
      IntMatrix B(k, n);
      do {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
      } while (rank(B) < k);
      Mat G = grassmann_coordinates(Q, Subspace::span(B));
      ASSERT_LT((G * G - G).cwiseAbs().maxCoeff(), 1e-10);
      ASSERT_NEAR(G.trace(), static_cast<double>(k), 1e-10);
      Mat M = to_eigen(Q.gram());
      ASSERT_LT((M * G - (M * G).transpose()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Moduli, TrivialSubspace) {
  QuadraticForm Q = QuadraticForm::sum_of_squares(4);
  Subspace L = Subspace::span({{1, 0, 0, 0}, {0, 1, 0, 0}});
  ModuliPoint mp = moduli_point(Q, L);
  EXPECT_NEAR(mp.alpha, 1, 1e-12);
  EXPECT_LT(mp.m_L.bottomLeftCorner(2, 2).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(mp.m_L.determinant(), 1, 1e-12);
  ModuliCheck c = shapes_from_moduli(Q, L, mp);
  EXPECT_LT(c.max_residual(), 1e-12);
  EXPECT_TRUE(c.lperp_basis_exact);
}

TEST(Moduli, LineInThreeSpace) {
  QuadraticForm Q = QuadraticForm::sum_of_squares(3);
  Subspace L = Subspace::span({{1, 2, 0}});
  ModuliPoint mp = moduli_point(Q, L);
  ModuliCheck c = shapes_from_moduli(Q, L, mp);
  EXPECT_LT(c.block_residual, 1e-10);
  EXPECT_LT(c.det_residual, 1e-10);
  EXPECT_LT(c.shape_Lperp_residual, 1e-9);
  EXPECT_EQ(gauss_reduce(gram(Q, orth_complement(Q, L))), (IntMatrix{{1, 0}, {0, 5}}));
}

TEST(Moduli, RandomSubspacesMatchExactShapes) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> u(-3, 3);
  for (auto &Q : moduli_forms())
    for (int t = 0; t < 25; ++t) {
      std::size_t n = Q.dim(), k = n == 6 ? 3 : 2;
      IntMatrix B(k, n);
      do {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
      } while (rank(B) < k);
      Subspace L = Subspace::span(B);
      ModuliPoint mp = moduli_point(Q, L);
      ModuliCheck c = shapes_from_moduli(Q, L, mp);
      ASSERT_LT(c.max_residual(), 1e-9) << L.key();
      ASSERT_TRUE(c.lperp_basis_exact) << L.key();
      ASSERT_LT((mp.g_Q.transpose() * mp.g_Q - to_eigen(Q.gram())).cwiseAbs().maxCoeff(), 1e-10);
    }
}
