#pragma once

#include "latshape/matrix.hpp"

#include <optional>
#include <utility>

namespace latshape {

struct HnfResult {
  IntMatrix H; // row Hermite normal form, H = U * M
  IntMatrix U; // unimodular
  std::size_t rank = 0;
};

struct SnfResult {
  IntVector d; // d[i] | d[i+1], length min(rows, cols)
  IntMatrix U, V; // U * M * V = diag(d)
};

namespace detail {

// rows i, k <- [[s, t], [-b/g, a/g]] applied to rows (i, k)
inline void combine_rows(IntMatrix &A, std::size_t i, std::size_t k, const Integer &s, const Integer &t,
                         const Integer &u, const Integer &v) {
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Integer x = A(i, j), y = A(k, j);
    A(i, j) = s * x + t * y;
    A(k, j) = u * x + v * y;
  }
}

inline void combine_cols(IntMatrix &A, std::size_t i, std::size_t k, const Integer &s, const Integer &t,
                         const Integer &u, const Integer &v) {
  for (std::size_t j = 0; j < A.rows(); ++j) {
    Integer x = A(j, i), y = A(j, k);
    A(j, i) = s * x + t * y;
    A(j, k) = u * x + v * y;
  }
}

inline void add_row_multiple(IntMatrix &A, std::size_t dst, std::size_t src, const Integer &f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < A.cols(); ++j) A(dst, j) += f * A(src, j);
}

inline void add_col_multiple(IntMatrix &A, std::size_t dst, std::size_t src, const Integer &f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < A.rows(); ++j) A(j, dst) += f * A(j, src);
}

inline void negate_row(IntMatrix &A, std::size_t i) {
  for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
}

inline void negate_col(IntMatrix &A, std::size_t i) {
  for (std::size_t j = 0; j < A.rows(); ++j) A(j, i) = -A(j, i);
}

} // namespace detail

// Row-style HNF: pivots positive, entries above a pivot in [0, pivot), zero rows at the bottom.
inline HnfResult hnf(const IntMatrix &M) {
  IntMatrix A = M;
  IntMatrix U = IntMatrix::identity(M.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    for (std::size_t i = r + 1; i < A.rows(); ++i) {
      if (A(i, c) == 0) continue;
      Integer a = A(r, c), b = A(i, c), s, t;
      Integer g = ext_gcd(a, b, s, t);
      Integer u = -b / g, v = a / g;
      detail::combine_rows(A, r, i, s, t, u, v);
      detail::combine_rows(U, r, i, s, t, u, v);
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) {
      detail::negate_row(A, r);
      detail::negate_row(U, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(A(i, c), A(r, c));
      detail::add_row_multiple(A, i, r, -q);
      detail::add_row_multiple(U, i, r, -q);
    }
    ++r;
  }
  return {std::move(A), std::move(U), r};
}

// nonzero rows of the HNF
inline IntMatrix hnf_basis(const IntMatrix &M) {
  auto h = hnf(M);
  return h.H.select_rows(0, h.rank);
}

inline SnfResult snf(const IntMatrix &M) {
  IntMatrix A = M;
  IntMatrix U = IntMatrix::identity(M.rows());
  IntMatrix V = IntMatrix::identity(M.cols());
  std::size_t m = A.rows(), n = A.cols(), len = std::min(m, n);
  for (std::size_t t = 0; t < len; ++t) {
    while (true) {
      // smallest nonzero entry in the trailing block goes to (t, t)
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (bi == m || abs(A(i, j)) < abs(A(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) break;
      A.swap_rows(t, bi);
      U.swap_rows(t, bi);
      A.swap_cols(t, bj);
      V.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        Integer q = A(i, t) / A(t, t);
        detail::add_row_multiple(A, i, t, -q);
        detail::add_row_multiple(U, i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        Integer q = A(t, j) / A(t, t);
        detail::add_col_multiple(A, j, t, -q);
        detail::add_col_multiple(V, j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      detail::add_row_multiple(A, t, bad, 1);
      detail::add_row_multiple(U, t, bad, 1);
    }
    if (A(t, t) < 0) {
      detail::negate_row(A, t);
      detail::negate_row(U, t);
    }
  }
  IntVector d(len);
  for (std::size_t i = 0; i < len; ++i) d[i] = A(i, i);
  return {std::move(d), std::move(U), std::move(V)};
}

// rows form a basis of {y in Z^n : M y = 0}
inline IntMatrix integer_kernel(const IntMatrix &M) {
  std::size_t n = M.cols();
  if (M.rows() == 0) return IntMatrix::identity(n);
  auto h = hnf(M.transpose());
  return h.U.select_rows(h.rank, n - h.rank);
}

inline IntMatrix unimodular_inverse(const IntMatrix &U) { return to_integer(inverse(U)); }

// Q-span(B) intersected with Z^n, returned in HNF
inline IntMatrix saturate(const IntMatrix &B) {
  if (rank(B) != B.rows()) throw MathError("saturate: basis is rank deficient");
  if (B.rows() == 0) return B;
  IntMatrix K = integer_kernel(B);
  return hnf_basis(integer_kernel(K));
}

inline bool is_primitive(const IntMatrix &B) {
  if (B.rows() == 0) return true;
  return hnf_basis(B) == saturate(B);
}

// unimodular matrix whose first rows are the primitive rows of B
inline IntMatrix complete_to_unimodular(const IntMatrix &B) {
  std::size_t k = B.rows(), n = B.cols();
  if (k == 0) return IntMatrix::identity(n);
  auto h = hnf(B.transpose());
  if (h.rank != k) throw MathError("complete_to_unimodular: rank deficient");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (h.H(i, j) != (i == j ? 1 : 0)) throw MathError("complete_to_unimodular: rows are not primitive");
  return unimodular_inverse(h.U).transpose();
}

// Canonical basis of a rational lattice: HNF of d*B divided by d, d the least common denominator.
inline RatMatrix canonical_basis(const RatMatrix &B) {
  if (B.rows() == 0) return B;
  Integer d = common_denominator(B);
  IntMatrix H = hnf_basis(to_integer(B.scaled(Rational(d))));
  RatMatrix out = to_rational(H);
  return out.scaled(Rational(1) / Rational(d));
}

// x with x * B = v, if v lies in the rational span of the rows of B
inline std::optional<RatVector> solve_left(const RatMatrix &B, const RatVector &v) {
  std::size_t k = B.rows();
  if (k == 0) {
    for (auto &x : v)
      if (x != 0) return std::nullopt;
    return RatVector{};
  }
  RatMatrix G = B * B.transpose();
  RatMatrix vm(1, v.size());
  vm.set_row(0, v);
  RatMatrix x = vm * B.transpose() * inverse(G);
  RatMatrix back = x * B;
  if (back != vm) return std::nullopt;
  return x.row(0);
}

inline std::optional<RatMatrix> solve_left(const RatMatrix &B, const RatMatrix &V) {
  RatMatrix X(V.rows(), B.rows());
  for (std::size_t i = 0; i < V.rows(); ++i) {
    auto x = solve_left(B, V.row(i));
    if (!x) return std::nullopt;
    X.set_row(i, *x);
  }
  return X;
}

inline bool lattice_contains(const RatMatrix &B, const RatVector &v) {
  auto x = solve_left(B, v);
  if (!x) return false;
  for (auto &c : *x)
    if (!is_integer(c)) return false;
  return true;
}

inline bool lattice_contains(const RatMatrix &sup, const RatMatrix &sub) {
  for (std::size_t i = 0; i < sub.rows(); ++i)
    if (!lattice_contains(sup, sub.row(i))) return false;
  return true;
}

inline bool same_lattice(const RatMatrix &a, const RatMatrix &b) { return canonical_basis(a) == canonical_basis(b); }

// Invariant factors of sup / sub; both given by bases of the same rank.
inline IntVector quotient_invariants(const RatMatrix &sub, const RatMatrix &sup) {
  if (sub.rows() != sup.rows()) throw MathError("quotient_invariants: rank mismatch");
  auto X = solve_left(sup, sub);
  if (!X || !is_integral(*X)) throw MathError("quotient_invariants: sub is not contained in sup");
  auto s = snf(to_integer(*X));
  for (auto &d : s.d)
    if (d == 0) throw MathError("quotient_invariants: sub has smaller rank");
  return s.d;
}

inline IntVector quotient_invariants(const IntMatrix &sub, const IntMatrix &sup) {
  return quotient_invariants(to_rational(sub), to_rational(sup));
}

inline Integer quotient_order(const RatMatrix &sub, const RatMatrix &sup) {
  Integer o = 1;
  for (auto &d : quotient_invariants(sub, sup)) o *= d;
  return o;
}

} // namespace latshape
