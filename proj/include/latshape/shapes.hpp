#pragma once

#include "latshape/isometry.hpp"
#include "latshape/quadlattice.hpp"
#include "latshape/shortvec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace latshape {

// Similarity class of a lattice: primitive integral Gram in canonical form plus the scale
// with gram = scale * (a Gram matrix equivalent to canonical).
struct ShapeClass {
  IntMatrix canonical;
  Rational scale;
  std::size_t dim() const { return canonical.rows(); }
  bool operator==(const ShapeClass &o) const { return canonical == o.canonical; }
};

struct UpperHalfPoint {
  double x = 0, y = 1;
};

// reduced (a, b, c) for the Gram [[a, b], [b, c]]: 0 <= 2b <= a <= c
inline IntMatrix gauss_reduce(const IntMatrix &G) {
  if (G.rows() != 2 || !G.is_symmetric()) throw MathError("gauss_reduce: need a symmetric 2x2 matrix");
  Integer a = G(0, 0), b = G(0, 1), c = G(1, 1);
  if (a <= 0 || a * c - b * b <= 0) throw MathError("gauss_reduce: form is not positive definite");
  while (true) {
    if (a > c) std::swap(a, c);
    // b -> b - m a with m the nearest integer to b / a
    Integer m = floor_div(2 * b + a, 2 * a);
    if (m != 0) {
      c = c - 2 * m * b + m * m * a;
      b = b - m * a;
      continue;
    }
    if (a <= c) break;
  }
  if (b < 0) b = -b;
  return IntMatrix{{a, b}, {b, c}};
}

inline UpperHalfPoint upper_half_point(const IntMatrix &G) {
  IntMatrix r = gauss_reduce(G);
  double a = to_double(r(0, 0)), b = to_double(r(0, 1)), c = to_double(r(1, 1));
  return {b == 0 ? 0.0 : -b / a, std::sqrt(a * c - b * b) / a};
}

inline UpperHalfPoint upper_half_point(const RatMatrix &G) {
  Integer d = common_denominator(G);
  return upper_half_point(to_integer(G.scaled(Rational(d))));
}

namespace detail {

inline IntMatrix pairwise_reduce(IntMatrix B, const IntMatrix &G) {
  // rows of B are coordinate vectors; greedily shorten them against each other
  std::size_t k = B.rows();
  auto ip = [&](std::size_t i, std::size_t j) {
    Integer s = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) s += B(i, a) * G(a, b) * B(j, b);
    return s;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        Integer nj = ip(j, j), x = ip(i, j);
        Integer m = floor_div(2 * x + nj, 2 * nj);
        if (m == 0) continue;
        Integer before = ip(i, i);
        Integer after = before - 2 * m * x + m * m * nj;
        if (after >= before) continue;
        for (std::size_t a = 0; a < k; ++a) B(i, a) -= m * B(j, a);
        changed = true;
      }
  }
  return B;
}

// lexicographically least Gram over bases drawn from the shortest generating set
inline IntMatrix canonical_search(const IntMatrix &G) {
  std::size_t k = G.rows();
  IntMatrix B = pairwise_reduce(IntMatrix::identity(k), G);
  IntMatrix RG = B * G * B.transpose();
  long long m0 = 0;
  for (std::size_t i = 0; i < k; ++i) m0 = std::max(m0, to_ll(RG(i, i)));
  SmallMatrix Gs = to_small(G);
  ShortVectors sv(Gs);
  std::vector<std::pair<long long, SmallVector>> vecs;
  sv.run(1, m0, false, [&](const SmallVector &x, long long nrm) {
    vecs.emplace_back(nrm, x);
    return true;
  });
  std::sort(vecs.begin(), vecs.end());
  // smallest norm level whose vectors generate Z^k
  long long m = m0;
  {
    IntMatrix acc(0, k);
    for (std::size_t i = 0; i < vecs.size();) {
      long long lvl = vecs[i].first;
      for (; i < vecs.size() && vecs[i].first == lvl; ++i) acc.append_row(IntVector(vecs[i].second.begin(), vecs[i].second.end()));
      IntMatrix h = hnf_basis(acc);
      acc = h;
      if (h.rows() == k && det(h) == 1) {
        m = lvl;
        break;
      }
    }
  }
  std::vector<SmallVector> S;
  for (auto &[nrm, v] : vecs)
    if (nrm <= m) S.push_back(v);

  std::vector<long long> best, cur;
  bool have = false;
  std::vector<SmallVector> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == k) {
      if (!have || cur < best) {
        best = cur;
        have = true;
      }
      return;
    }
    for (auto &v : S) {
      std::size_t mark = cur.size();
      cur.push_back(small_norm(Gs, v));
      for (std::size_t i = 0; i < j; ++i) cur.push_back(small_inner(Gs, chosen[i], v));
      bool viable = true;
      if (have) {
        // compare the new prefix with best
        auto cmp = std::lexicographical_compare_three_way(cur.begin(), cur.end(), best.begin(), best.begin() + cur.size());
        viable = cmp <= 0;
      }
      if (viable) {
        chosen.push_back(v);
        IntMatrix part = from_small(chosen);
        auto s = snf(part);
        bool prim = true;
        for (auto &d : s.d) prim = prim && d == 1;
        if (prim) rec(j + 1);
        chosen.pop_back();
      }
      cur.resize(mark);
    }
  };
  rec(0);
  IntMatrix out(k, k);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < k; ++j) {
    out(j, j) = best[pos++];
    for (std::size_t i = 0; i < j; ++i) {
      out(i, j) = best[pos++];
      out(j, i) = out(i, j);
    }
  }
  return out;
}

} // namespace detail

// canonical representative of the GL_k(Z) class of a primitive positive definite integral Gram
inline IntMatrix canonical_form(const IntMatrix &G) {
  std::size_t k = G.rows();
  if (k == 0) return G;
  if (k == 1) return IntMatrix{{G(0, 0)}};
  if (k == 2) return gauss_reduce(G);
  return detail::canonical_search(G);
}

inline ShapeClass shape_of_gram(const RatMatrix &G) {
  if (G.rows() == 0) return {IntMatrix(0, 0), Rational(1)};
  Integer d = common_denominator(G);
  IntMatrix Gi = to_integer(G.scaled(Rational(d)));
  auto cp = content_and_primitive(Gi);
  return {canonical_form(cp.primitive), Rational(cp.content) / Rational(d)};
}

inline ShapeClass shape(const QuadraticForm &Q, const RatMatrix &basis) { return shape_of_gram(gram_restriction(Q, basis)); }

inline ShapeClass shape(const QuadraticForm &Q, const Subspace &L) { return shape(Q, L.rbasis()); }

// rational matrix equivalence up to a positive scalar
inline bool similar_forms(const RatMatrix &A, const RatMatrix &B) {
  if (A.rows() != B.rows()) return false;
  return shape_of_gram(A) == shape_of_gram(B);
}

} // namespace latshape
