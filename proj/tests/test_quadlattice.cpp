#include "latshape/isometry.hpp"
#include "latshape/quadlattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latshape;

namespace {

const QuadraticForm Q3 = QuadraticForm::sum_of_squares(3);
const QuadraticForm Q112 = QuadraticForm::diagonal({1, 1, 2});

Subspace random_subspace(std::size_t n, std::size_t k, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> u(-3, 3);
  IntMatrix B(k, n);
  do {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
  } while (rank(B) < k);
  return Subspace::span(B);
}

std::vector<QuadraticForm> forms() {
  return {QuadraticForm::sum_of_squares(4), Q112, QuadraticForm::diagonal({1, 2, 3}),
          QuadraticForm(IntMatrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}), QuadraticForm::sum_of_squares(5)};
}

// |{x in Z^2/G Z^2 : m x = 0}| by walking (Z/d)^2, d = det G
long long torsion_count(const IntMatrix &G, long long m) {
  long long d = to_ll(det(G));
  RatMatrix Gi = inverse(G);
  long long hits = 0;
  for (long long a = 0; a < d; ++a)
    for (long long b = 0; b < d; ++b) {
      Rational x = Gi(0, 0) * m * a + Gi(0, 1) * m * b, y = Gi(1, 0) * m * a + Gi(1, 1) * m * b;
      if (is_integer(x) && is_integer(y)) ++hits;
    }
  return hits / d; // (Z/d)^2 -> Z^2/GZ^2 is onto with fibres of size d
}

} // namespace

TEST(GramRestriction, Examples) {
  EXPECT_EQ(gram(Q3, Subspace::span({{1, 2, 0}})), (IntMatrix{{5}}));
  EXPECT_EQ(gram_restriction(Q112, IntMatrix::identity(3)), Q112.gram());
  QuadraticForm Q6 = QuadraticForm::sum_of_squares(6);
  Subspace L = Subspace::span({{1, 2, 0, 0, 0, 0}, {0, 0, 1, 2, 0, 0}, {0, 0, 0, 0, 1, 2}});
  EXPECT_EQ(gram(Q6, L), IntMatrix::identity(3).scaled(Integer(5)));
  EXPECT_EQ(disc(Q6, L), 125);
  EXPECT_EQ(glue_group(Q6, L).invariants, (IntVector{5, 5, 5}));
  ContentSplit c = content_and_primitive(gram(Q6, L));
  EXPECT_EQ(c.content, 5);
  EXPECT_EQ(c.primitive, IntMatrix::identity(3));
}

TEST(Disc, Examples) {
  EXPECT_EQ(disc(Q3, Subspace::span({{1, 2, 0}})), 5);
  QuadraticForm D = QuadraticForm::diagonal({2, 3, 5, 7});
  EXPECT_EQ(disc(D, Subspace::span({{1, 0, 0, 0}, {0, 1, 0, 0}})), 6);
}

TEST(Dual, Examples) {
  RatMatrix d = dual_lattice(Q3, RatMatrix{{1, 2, 0}});
  EXPECT_EQ(d, (RatMatrix{{Rational(1) / 5, Rational(2) / 5, 0}}));
  EXPECT_EQ(integer_dual(Q112), (RatMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1) / 2}}));
  RatMatrix B{{1, 1, 0}, {1, -1, 0}, {0, 0, 1}};
  EXPECT_TRUE(same_lattice(dual_lattice(Q3, dual_lattice(Q3, B)), B));
}

TEST(OrthComplement, Examples) {
  EXPECT_EQ(orth_complement(Q3, Subspace::span({{1, 2, 0}})), Subspace::span({{2, -1, 0}, {0, 0, 1}}));
  EXPECT_EQ(orth_complement(Q112, Subspace::span({{0, 0, 1}})), Subspace::span({{1, 0, 0}, {0, 1, 0}}));
  std::mt19937_64 rng(3);
  for (auto &Q : forms())
    for (int t = 0; t < 20; ++t) {
      Subspace L = random_subspace(Q.dim(), 1 + t % (Q.dim() - 1), rng);
      ASSERT_EQ(orth_complement(Q, orth_complement(Q, L)), L);
    }
}

TEST(Projection, Examples) {
  RatMatrix p = project_lattice(Q3, Subspace::span({{1, 2, 0}}), RatMatrix::identity(3));
  EXPECT_TRUE(same_lattice(p, RatMatrix{{Rational(1) / 5, Rational(2) / 5, 0}}));
  EXPECT_TRUE(same_lattice(project_lattice(Q112, Subspace::span({{0, 0, 1}}), RatMatrix::identity(3)), RatMatrix{{0, 0, 1}}));
}

TEST(Glue, LocalExponents) {
  EXPECT_EQ(local_glue(GlueGroup{{5}}, 5), (std::vector<int>{1}));
  EXPECT_EQ(local_glue(GlueGroup{{2, 12}}, 2), (std::vector<int>{1, 2}));
  EXPECT_TRUE(local_glue(GlueGroup{{5}}, 2).empty());
}

TEST(Glue, TorsionCountsMatchBruteForce) {
  std::mt19937_64 rng(8);
  for (auto &Q : forms()) {
    if (Q.dim() < 3) continue;
    for (int t = 0; t < 12; ++t) {
      Subspace L = random_subspace(Q.dim(), 2, rng);
      IntMatrix G = gram(Q, L);
      if (det(G) > 40) continue;
      GlueGroup g = glue_group(Q, L);
      ASSERT_EQ(g.order(), det(G));
      for (long long m : {2, 3, 4, 6}) {
        Integer expect = 1;
        for (auto &d : g.invariants) expect *= gcd(d, Integer(m));
        ASSERT_EQ(torsion_count(G, m), expect) << "m=" << m;
      }
    }
  }
}

TEST(Index, Examples) {
  EXPECT_EQ(index_iL(Q112, Subspace::span({{0, 0, 1}})), 2);
  EXPECT_EQ(index_iL(Q112, Subspace::span({{1, 0, 0}})), 1);
  EXPECT_EQ(index_iL(Q3, Subspace::span({{1, 2, 3}})), 1);
}

TEST(Index, ProductIsDiscOfQ) {
  std::mt19937_64 rng(21);
  for (auto &Q : forms())
    for (int t = 0; t < 30; ++t) {
      Subspace L = random_subspace(Q.dim(), 1 + t % (Q.dim() - 1), rng);
      ASSERT_EQ(index_iL(Q, L) * index_iL(Q, orth_complement(Q, L)), Q.disc());
    }
}

TEST(LocalDisc, Examples) {
  QuadraticForm Q = QuadraticForm::diagonal({12, 1});
  Subspace e1 = Subspace::span({{1, 0}});
  LocalDisc l = local_disc(Q, e1, 2);
  EXPECT_EQ(l.valuation, 2);
  EXPECT_EQ(l.unit_class.unit, 3);
  LocalDisc f = local_disc(Q3, Subspace::span({{1, 2, 0}}), 5);
  EXPECT_EQ(f.valuation, 1);
  EXPECT_EQ(f.unit_class.unit, 1);
  EXPECT_EQ(local_disc(Q3, Subspace::span({{1, 0, 0}}), 7).valuation, 0);
}

TEST(RestrictedForms, Examples) {
  RestrictedForms r = restricted_forms(Q112, Subspace::span({{1, 0, 0}}));
  EXPECT_EQ(r.q_Lperp.disc(), 2);
  EXPECT_EQ(r.tau_Lperp.disc(), Rational(1) / 2);
  EXPECT_EQ(index_iL(Q112, Subspace::span({{0, 1, 0}, {0, 0, 1}})), 2);
  RestrictedForms s = restricted_forms(Q3, Subspace::span({{1, 2, 0}}));
  EXPECT_EQ(s.q_L.gram, (RatMatrix{{5}}));
  EXPECT_EQ(det(s.q_Lperp.gram), 5);
  EXPECT_EQ(s.tau_Lperp.gram, s.q_Lperp.gram);
}

TEST(Content, Examples) {
  ContentSplit c = content_and_primitive(IntMatrix{{2, 2}, {2, 4}});
  EXPECT_EQ(c.content, 2);
  EXPECT_EQ(c.primitive, (IntMatrix{{1, 1}, {1, 2}}));
  EXPECT_EQ(content_and_primitive(IntMatrix{{2, 1}, {1, 3}}).content, 1);
  EXPECT_THROW(content_and_primitive(RatMatrix{{Rational(1) / 2}}), MathError);
}

TEST(Lambda, Examples) {
  LambdaLattice a = lambda_L(Q112, Subspace::span({{0, 0, 1}}));
  EXPECT_TRUE(same_lattice(a.basis, RatMatrix::identity(3)));
  LambdaLattice b = lambda_L(Q112, Subspace::span({{1, 0, 0}}));
  EXPECT_TRUE(same_lattice(b.basis, RatMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, Rational(1) / 2}}));
  EXPECT_TRUE(same_lattice(lambda_L(Q3, Subspace::span({{1, 1, 1}})).basis, RatMatrix::identity(3)));
}

TEST(Lambda, LiesBetweenIntegersAndDual) {
  std::mt19937_64 rng(12);
  for (auto &Q : forms())
    for (int t = 0; t < 20; ++t) {
      Subspace L = random_subspace(Q.dim(), 1 + t % (Q.dim() - 1), rng);
      LambdaLattice lam = lambda_L(Q, L);
      ASSERT_TRUE(lattice_contains(integer_dual(Q), lam.basis));
      ASSERT_EQ(canonical_basis(lam.basis.block(0, 0, L.dim(), Q.dim())), canonical_basis(L.rbasis()));
      // projecting onto L^perp gives the dual of L^perp(Z)
      Subspace P = orth_complement(Q, L);
      ASSERT_TRUE(same_lattice(project_lattice(Q, P, lam.basis), dual_lattice(Q, P.rbasis())));
    }
}

TEST(Rotation, Examples) {
  RatMatrix g{{Rational(3) / 5, Rational(4) / 5, 0}, {Rational(-4) / 5, Rational(3) / 5, 0}, {0, 0, 1}};
  Subspace L = Subspace::span({{1, 0, 0}});
  EXPECT_EQ(rotate_subspace(Q3, RatMatrix::identity(3), L), L);
  Subspace gL = rotate_subspace(Q3, g, L);
  EXPECT_EQ(gL, Subspace::span({{3, -4, 0}}));
  EXPECT_EQ(disc(Q3, gL), 25);
  EXPECT_EQ(ord_p(g, 5), 1);
  RatMatrix swap{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}};
  Subspace m = Subspace::span({{1, 2, 0}});
  EXPECT_EQ(disc(Q3, rotate_subspace(Q3, swap, m)), disc(Q3, m));
  EXPECT_THROW(rotate_subspace(Q3, RatMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}, L), MathError);
}

TEST(Stabilizer, SignedPermutationOracle) {
  // brute force over all signed permutation matrices of determinant 1
  auto brute = [](const Subspace &L) {
    std::size_t count = 0;
    std::vector<int> perm{0, 1, 2};
    do {
      for (int s = 0; s < 8; ++s) {
        IntMatrix X(3, 3);
        for (int i = 0; i < 3; ++i) X(i, perm[i]) = (s >> i) & 1 ? -1 : 1;
        if (det(X) != 1) continue;
        if (OrthogonalGroup::apply(to_small(X), L) == L) ++count;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
  };
  OrthogonalGroup G(Q3);
  EXPECT_EQ(G.order(), 24u);
  EXPECT_EQ(G.stabilizer_order(Subspace::span({{1, 0, 0}})), 8u);
  for (auto &L : {Subspace::span({{1, 0, 0}}), Subspace::span({{1, 1, 0}}), Subspace::span({{1, 1, 1}}), Subspace::span({{1, 2, 3}}),
                  Subspace::span({{1, 2, 0}, {0, 0, 1}})})
    EXPECT_EQ(G.stabilizer_order(L), brute(L)) << L.key();
  QuadraticForm generic(IntMatrix{{3, 1, 1}, {1, 5, 2}, {1, 2, 7}});
  EXPECT_EQ(OrthogonalGroup(generic).order(), 1u);
  EXPECT_EQ(integral_stabilizer_order(generic, Subspace::span({{1, 0, 0}})), 1u);
}
