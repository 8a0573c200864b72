#pragma once

#include "latshape/quadlattice.hpp"
#include "latshape/shortvec.hpp"

#include <functional>
#include <map>

namespace latshape {

// Backtracking search for X in GL_k(Z) with X B X^T = A (rows of X are vectors of the B-lattice).
// f(const SmallMatrix& X) returns false to stop.
template <class F> void for_each_isometry(const SmallMatrix &A, const SmallMatrix &B, F &&f) {
  std::size_t k = A.size();
  if (B.size() != k) return;
  if (det(from_small(A)) != det(from_small(B))) return;
  ShortVectors sv(B);
  std::map<long long, std::vector<SmallVector>> by_norm;
  for (std::size_t i = 0; i < k; ++i) by_norm[A[i][i]];
  for (auto &[nrm, list] : by_norm)
    sv.run(nrm, nrm, false, [&](const SmallVector &x, long long) {
      list.push_back(x);
      return true;
    });
  SmallMatrix X(k);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == k) return f(static_cast<const SmallMatrix &>(X));
    for (const auto &v : by_norm[A[i][i]]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = small_inner(B, X[j], v) == A[j][i];
      if (!ok) continue;
      X[i] = v;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  rec(0);
}

inline bool forms_equivalent(const IntMatrix &A, const IntMatrix &B) {
  if (A.rows() != B.rows()) return false;
  bool found = false;
  for_each_isometry(to_small(A), to_small(B), [&](const SmallMatrix &) {
    found = true;
    return false;
  });
  return found;
}

inline long long small_det_sign(const SmallMatrix &X) {
  Integer d = det(from_small(X));
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

// SO_Q(Z); each element stored as X = g^T, so a row vector v maps to v X.
class OrthogonalGroup {
public:
  explicit OrthogonalGroup(const QuadraticForm &Q) : n_(Q.dim()), Q_(Q) {
    SmallMatrix M = to_small(Q.gram());
    for_each_isometry(M, M, [&](const SmallMatrix &X) {
      if (small_det_sign(X) == 1) elems_.push_back(X);
      return true;
    });
  }
  std::size_t order() const { return elems_.size(); }
  const std::vector<SmallMatrix> &elements() const { return elems_; }

  static Subspace apply(const SmallMatrix &X, const Subspace &L) {
    IntMatrix img = L.basis() * from_small(X);
    return Subspace(L.ambient(), hnf_basis(img));
  }

  // X maps L into itself iff every image b X is orthogonal to L^perp; isometries preserve dimension
  std::size_t stabilizer_order(const Subspace &L) const {
    std::size_t k = L.dim();
    if (k == 0 || k == n_) return elems_.size();
    SmallMatrix B = to_small(L.basis());
    SmallMatrix W = to_small(Q_.gram() * orth_complement(Q_, L).basis().transpose()); // n x (n-k)
    std::size_t c = 0;
    SmallVector img(n_);
    for (auto &X : elems_) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          long long s = 0;
          for (std::size_t a = 0; a < n_; ++a) s += B[i][a] * X[a][j];
          img[j] = s;
        }
        for (std::size_t j = 0; j < W[0].size() && ok; ++j) {
          __int128 s = 0;
          for (std::size_t a = 0; a < n_; ++a) s += static_cast<__int128>(img[a]) * W[a][j];
          ok = s == 0;
        }
      }
      if (ok) ++c;
    }
    return c;
  }

private:
  std::size_t n_;
  QuadraticForm Q_;
  std::vector<SmallMatrix> elems_;
};

inline std::size_t integral_stabilizer_order(const QuadraticForm &Q, const Subspace &L) {
  return OrthogonalGroup(Q).stabilizer_order(L);
}

} // namespace latshape
