#pragma once

#include "latshape/quadlattice.hpp"
#include "latshape/shapes.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace latshape {

using Mat = Eigen::MatrixXd;

inline Mat to_eigen(const RatMatrix &m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline Mat to_eigen(const IntMatrix &m) { return to_eigen(to_rational(m)); }

// Q-orthogonal projection onto L acting on column vectors
inline Mat grassmann_coordinates(const QuadraticForm &Q, const Subspace &L) {
  return to_eigen(projection_matrix(Q, L));
}

struct ModuliPoint {
  Mat g_L;        // columns: L(Z) basis followed by lifts, a basis of Lambda_L
  double alpha = 1;
  Mat rho;        // Q-orthogonal, det 1, maps L to the span of the first k coordinate vectors
  Mat a_L;        // diagonal
  Mat m_L;        // a_L rho alpha g_L, block upper triangular
  Mat g_Q;        // g_Q^T g_Q = M_Q, upper triangular
  RatMatrix lambda_basis;
  bool lambda_contains_integers = false;
};

namespace detail {

// Q-orthonormalize the columns of V (Gram-Schmidt in the Q inner product)
inline Mat q_orthonormalize(const Mat &V, const Mat &M) {
  Mat U = V;
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) U.col(j) -= (U.col(i).transpose() * M * U.col(j))(0, 0) * U.col(i);
    double nrm = std::sqrt((U.col(j).transpose() * M * U.col(j))(0, 0));
    U.col(j) /= nrm;
  }
  return U;
}

} // namespace detail

inline ModuliPoint moduli_point(const QuadraticForm &Q, const Subspace &L) {
  std::size_t n = Q.dim(), k = L.dim();
  if (k == 0 || k >= n) throw MathError("moduli_point: need 0 < dim L < n");
  ModuliPoint mp;
  LambdaLattice lam = lambda_L(Q, L);
  mp.lambda_basis = lam.basis;
  mp.lambda_contains_integers = lam.contains_integer_lattice;
  Mat M = to_eigen(Q.gram());
  Mat gL = to_eigen(lam.basis).transpose();
  if (gL.determinant() < 0) gL.col(n - 1) *= -1;
  mp.g_L = gL;
  mp.alpha = std::pow(gL.determinant(), -1.0 / static_cast<double>(n));

  Eigen::LLT<Mat> llt(M);
  Mat R = llt.matrixL().transpose();
  mp.g_Q = R;

  Subspace P = orth_complement(Q, L);
  Mat V(n, n);
  V.leftCols(k) = to_eigen(L.basis()).transpose();
  V.rightCols(n - k) = to_eigen(P.basis()).transpose();
  Mat U = detail::q_orthonormalize(V, M);
  if (U.determinant() < 0) U.col(n - 1) *= -1;
  mp.rho = R.inverse() * U.inverse();

  Mat X = mp.rho * (mp.alpha * gL);
  double dA = std::abs(X.topLeftCorner(k, k).determinant());
  double lambda = std::pow(dA, -1.0 / static_cast<double>(k));
  Mat a = Mat::Identity(n, n);
  double mu = std::pow(lambda, -static_cast<double>(k) / static_cast<double>(n - k));
  for (std::size_t i = 0; i < n; ++i) a(i, i) = i < k ? lambda : mu;
  mp.a_L = a;
  mp.m_L = a * X;
  return mp;
}

struct ModuliCheck {
  double block_residual = 0;  // lower-left block of m_L
  double det_residual = 0;    // |det m_L - 1| and |det A| - 1
  double orth_residual = 0;   // rho^T M rho - M
  double shape_L_residual = 0;      // relative, after scaling both Grams to determinant 1
  double shape_Lperp_residual = 0;
  bool lperp_basis_exact = false; // dual columns span L^perp(Z) exactly
  double max_residual() const {
    return std::max({block_residual, det_residual, orth_residual, shape_L_residual, shape_Lperp_residual});
  }
};

namespace detail {

inline Mat normalized(const Mat &G) {
  double d = G.determinant();
  return G / std::pow(d, 1.0 / static_cast<double>(G.rows()));
}

inline double max_abs(const Mat &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double relative_gap(const Mat &real, const Mat &exact) {
  Mat e = normalized(exact);
  return max_abs(normalized(real) - e) / std::max(1.0, max_abs(e));
}

} // namespace detail

// Reads the shapes of L(Z) and L^perp(Z) back off the moduli point and compares them with the exact ones.
inline ModuliCheck shapes_from_moduli(const QuadraticForm &Q, const Subspace &L, const ModuliPoint &mp) {
  std::size_t n = Q.dim(), k = L.dim();
  ModuliCheck c;
  Mat M = to_eigen(Q.gram());
  c.block_residual = detail::max_abs(mp.m_L.bottomLeftCorner(n - k, k));
  c.det_residual = std::max(std::abs(mp.m_L.determinant() - 1.0),
                            std::abs(std::abs(mp.m_L.topLeftCorner(k, k).determinant()) - 1.0));
  c.orth_residual = detail::max_abs(mp.rho.transpose() * M * mp.rho - M);

  Mat Y = mp.g_Q * mp.m_L;
  Mat pi1 = Y.topLeftCorner(k, k);
  Mat pi2 = Y.bottomRightCorner(n - k, n - k);
  Mat GL_real = pi1.transpose() * pi1;
  Mat B2 = pi2.inverse().transpose();
  Mat GP_real = B2.transpose() * B2;

  Mat GL_exact = to_eigen(gram(Q, L));
  c.shape_L_residual = detail::relative_gap(GL_real, GL_exact);

  // columns of M^{-1} g_L^{-T} past the first k: a basis of L^perp(Z)
  RatMatrix gl = mp.lambda_basis.transpose();
  RatMatrix gl_adj = gl; // column sign flip applied to the real g_L does not change the spanned lattice
  RatMatrix dual = inverse(Q.gram()) * inverse(gl_adj).transpose();
  RatMatrix cols = dual.block(0, k, n, n - k).transpose();
  c.lperp_basis_exact = same_lattice(cols, orth_complement(Q, L).rbasis());
  Mat GP_exact = to_eigen(gram_restriction(Q, cols));
  if (mp.g_L.col(n - 1).isApprox(-to_eigen(mp.lambda_basis).transpose().col(n - 1))) {
    // the last dual column flips with the last column of g_L
    GP_exact.row(n - k - 1) *= -1;
    GP_exact.col(n - k - 1) *= -1;
  }
  c.shape_Lperp_residual = detail::relative_gap(GP_real, GP_exact);
  return c;
}

} // namespace latshape
