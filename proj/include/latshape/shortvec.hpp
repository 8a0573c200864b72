#pragma once

#include "latshape/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace latshape {

using SmallMatrix = std::vector<std::vector<long long>>;
using SmallVector = std::vector<long long>;

inline SmallMatrix to_small(const IntMatrix &m) {
  const Integer lim = Integer(1) << 40;
  SmallMatrix s(m.rows(), SmallVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (abs(m(i, j)) > lim) throw MathError("entry too large for machine-word enumeration");
      s[i][j] = to_ll(m(i, j));
    }
  return s;
}

inline IntMatrix from_small(const SmallMatrix &s, std::size_t cols = 0) {
  IntMatrix m(s.size(), s.empty() ? cols : s[0].size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s[i].size(); ++j) m(i, j) = s[i][j];
  return m;
}

inline long long small_norm(const SmallMatrix &G, const SmallVector &x) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    long long r = 0;
    for (std::size_t j = 0; j < x.size(); ++j) r += G[i][j] * x[j];
    s += x[i] * r;
  }
  return s;
}

inline long long small_inner(const SmallMatrix &G, const SmallVector &x, const SmallVector &y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    long long r = 0;
    for (std::size_t j = 0; j < y.size(); ++j) r += G[i][j] * y[j];
    s += x[i] * r;
  }
  return s;
}

// Fincke-Pohst enumeration of x in Z^k with lo <= x G x^T <= hi for a positive definite integral G.
// With up_to_sign only one of x, -x is reported (the one whose last nonzero coordinate is positive).
class ShortVectors {
public:
  explicit ShortVectors(const SmallMatrix &G) : G_(G), k_(G.size()), q_(k_, std::vector<long double>(k_, 0)) {
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) q_[i][j] = static_cast<long double>(G[i][j]);
    // in-place decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    for (std::size_t i = 0; i < k_; ++i) {
      if (q_[i][i] <= 0) throw MathError("short vector enumeration needs a positive definite form");
      for (std::size_t j = i + 1; j < k_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (std::size_t a = i + 1; a < k_; ++a)
        for (std::size_t b = a; b < k_; ++b) q_[a][b] -= q_[a][i] * q_[i][b];
    }
  }

  std::size_t dim() const { return k_; }
  const SmallMatrix &gram() const { return G_; }

  // f(const SmallVector&, long long norm) returns false to stop early
  template <class F> bool run(long long lo, long long hi, bool up_to_sign, F &&f) const {
    if (hi < lo || hi < 0) return true;
    if (k_ == 0) return lo > 0 ? true : f(SmallVector{}, 0LL);
    SmallVector x(k_, 0);
    std::vector<long double> partial(k_ + 1, 0);
    return rec(static_cast<long>(k_) - 1, lo, hi, up_to_sign, true, x, partial, f);
  }

  template <class F> bool run(long long hi, F &&f) const { return run(1, hi, true, f); }

private:
  template <class F>
  bool rec(long i, long long lo, long long hi, bool sign, bool higher_zero, SmallVector &x,
           std::vector<long double> &partial, F &f) const {
    const long double eps = 1e-7L * (1.0L + static_cast<long double>(hi));
    long double c = 0;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k_; ++j) c -= q_[i][j] * static_cast<long double>(x[j]);
    long double room = static_cast<long double>(hi) - partial[i + 1];
    if (room < -eps) return true;
    long double qi = q_[i][i];
    long double r = std::sqrt(std::max<long double>(0, room / qi) + eps);
    long long a = static_cast<long long>(std::ceil(c - r));
    long long b = static_cast<long long>(std::floor(c + r));
    if (sign && higher_zero) a = std::max(a, 0LL);
    auto visit = [&](long long v) -> bool {
      x[i] = v;
      long double d = static_cast<long double>(v) - c;
      partial[i] = partial[i + 1] + qi * d * d;
      if (partial[i] > static_cast<long double>(hi) + eps) return true;
      if (i == 0) {
        long long nrm = small_norm(G_, x);
        if (nrm < lo || nrm > hi) return true;
        return f(static_cast<const SmallVector &>(x), nrm);
      }
      return rec(i - 1, lo, hi, sign, higher_zero && v == 0, x, partial, f);
    };
    bool ok = true;
    if (i == 0 && lo > 0) {
      // skip the interior where the norm stays below lo
      long double inner = (static_cast<long double>(lo) - partial[1]) / qi;
      if (inner > 0) {
        long double ri = std::sqrt(inner) - 1e-7L * (1.0L + std::sqrt(inner));
        long long ea = static_cast<long long>(std::floor(c - ri));
        long long eb = static_cast<long long>(std::ceil(c + ri));
        if (ri > 0 && ea < eb) {
          for (long long v = a; v <= std::min(b, ea) && ok; ++v) ok = visit(v);
          for (long long v = std::max(a, eb); v <= b && ok; ++v) ok = visit(v);
          x[i] = 0;
          return ok;
        }
      }
    }
    for (long long v = a; v <= b && ok; ++v) {
      if (sign && higher_zero && i == 0 && v == 0) continue;
      ok = visit(v);
    }
    x[i] = 0;
    return ok;
  }

  SmallMatrix G_;
  std::size_t k_;
  std::vector<std::vector<long double>> q_;
};

// HNF of a small full-row-rank matrix, returned flattened row by row
inline SmallVector small_hnf(SmallMatrix A) {
  std::size_t m = A.size(), n = m ? A[0].size() : 0;
  auto check = [](__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
      throw MathError("machine-word HNF overflow");
    return static_cast<long long>(v);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (A[i][c] == 0) continue;
      long long a = A[r][c], b = A[i][c];
      long long s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a, r1 = b;
      while (r1 != 0) {
        long long q = r0 / r1, tmp;
        tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
      }
      if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
      long long u = -b / r0, v = a / r0;
      for (std::size_t j = 0; j < n; ++j) {
        __int128 x = A[r][j], y = A[i][j];
        A[r][j] = check(s0 * x + t0 * y);
        A[i][j] = check(u * x + v * y);
      }
    }
    if (A[r][c] == 0) continue;
    if (A[r][c] < 0)
      for (auto &x : A[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      long long q = A[i][c] / A[r][c];
      if (A[i][c] % A[r][c] != 0 && A[i][c] < 0) --q;
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) A[i][j] = check(static_cast<__int128>(A[i][j]) - static_cast<__int128>(q) * A[r][j]);
    }
    ++r;
  }
  if (r != m) throw MathError("small_hnf: rank deficient");
  SmallVector out;
  out.reserve(m * n);
  for (auto &row : A) out.insert(out.end(), row.begin(), row.end());
  return out;
}

} // namespace latshape
