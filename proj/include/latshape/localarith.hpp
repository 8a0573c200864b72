#pragma once

#include "latshape/quadlattice.hpp"

namespace latshape {

// place: a prime p, or 0 for the real place
constexpr long kInfinity = 0;

inline int legendre(const Integer &a, const Integer &p) {
  Integer r = mod(a, p);
  if (r == 0) return 0;
  return boost::multiprecision::powm(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// integer in the same square class as r
inline Integer square_class_rep(const Rational &r) {
  if (r == 0) throw MathError("square class of zero");
  return numerator(r) * denominator(r);
}

// congruent diagonal form over Q
inline RatVector diagonalize(const RatMatrix &G) {
  if (!G.is_symmetric()) throw MathError("diagonalize: matrix is not symmetric");
  RatMatrix A = G;
  std::size_t n = A.rows();
  RatVector out;
  for (std::size_t c = 0; c < n; ++c) {
    if (A(c, c) == 0) {
      std::size_t p = c + 1;
      while (p < n && A(p, p) == 0) ++p;
      if (p < n) {
        A.swap_rows(c, p);
        A.swap_cols(c, p);
      } else {
        std::size_t j = c + 1;
        while (j < n && A(c, j) == 0) ++j;
        if (j < n) {
          // e_c <- e_c + e_j gives a nonzero diagonal entry 2 A(c, j)
          for (std::size_t t = 0; t < n; ++t) A(c, t) += A(j, t);
          for (std::size_t t = 0; t < n; ++t) A(t, c) += A(t, j);
        }
      }
    }
    Rational piv = A(c, c);
    out.push_back(piv);
    if (piv == 0) continue;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (A(i, c) == 0) continue;
      Rational f = A(i, c) / piv;
      for (std::size_t t = c; t < n; ++t) A(i, t) -= f * A(c, t);
      for (std::size_t t = c; t < n; ++t) A(t, i) = A(i, t);
    }
  }
  return out;
}

namespace detail {

inline long long powmod_ll(long long b, long long e, long long m) {
  __int128 r = 1, x = b % m;
  if (x < 0) x += m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<long long>(r);
}

inline int legendre_ll(long long a, long long p) {
  long long r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  return powmod_ll(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// machine-word version for |x|, |y| < 2^62 and odd or even p
inline int hilbert_symbol_ll(long long x, long long y, long long p) {
  int al = 0, be = 0;
  while (x % p == 0) x /= p, ++al;
  while (y % p == 0) y /= p, ++be;
  if (p == 2) {
    auto m8 = [](long long t) { return ((t % 8) + 8) % 8; };
    int e = (m8(x) % 4 == 3 && m8(y) % 4 == 3 ? 1 : 0);
    auto omega = [&](long long t) { long long r = m8(t); return r == 3 || r == 5 ? 1 : 0; };
    e += al * omega(y) + be * omega(x);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2 && ((p - 1) / 2) % 2 == 1) s = -s;
  if (be % 2) s *= legendre_ll(x, p);
  if (al % 2) s *= legendre_ll(y, p);
  return s;
}

} // namespace detail

inline int hilbert_symbol(const Rational &a, const Rational &b, long place) {
  if (a == 0 || b == 0) throw MathError("hilbert symbol of zero");
  if (place == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
  Integer p = place;
  Integer x = square_class_rep(a), y = square_class_rep(b);
  const Integer lim = Integer(1) << 62;
  if (abs(x) < lim && abs(y) < lim) return detail::hilbert_symbol_ll(to_ll(x), to_ll(y), place);
  int al = valuation(x, p), be = valuation(y, p);
  Integer pa = pow(p, static_cast<unsigned>(al)), pb = pow(p, static_cast<unsigned>(be));
  Integer u = x / pa, v = y / pb;
  if (p == 2) {
    auto eps = [](const Integer &t) { return static_cast<int>(to_ll(mod((t - 1) / 2, Integer(2)))); };
    auto omega = [](const Integer &t) { return static_cast<int>(to_ll(mod((t * t - 1) / 8, Integer(2)))); };
    int e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2 && mod((p - 1) / 2, Integer(2)) == 1) s = -s;
  if (be % 2) s *= legendre(u, p);
  if (al % 2) s *= legendre(v, p);
  return s;
}

inline int hasse_invariant(const RatVector &diag, long place) {
  int h = 1;
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) h *= hilbert_symbol(diag[i], diag[j], place);
  return h;
}

inline bool is_local_square(const Rational &a, long place) {
  if (a == 0) return true;
  if (place == kInfinity) return a > 0;
  Integer p = place;
  Integer x = square_class_rep(a);
  int v = valuation(x, p);
  if (v % 2) return false;
  Integer u = x / pow(p, static_cast<unsigned>(v));
  if (p == 2) return mod(u, Integer(8)) == 1;
  return legendre(u, p) == 1;
}

// isotropy over Q_p of a nondegenerate form of rank m with determinant det and Hasse invariant eps
inline bool isotropic_from_invariants(std::size_t m, const Rational &det, int eps, long place) {
  if (place == kInfinity) throw MathError("isotropic_from_invariants: finite places only");
  if (m <= 1) return false;
  if (m == 2) return is_local_square(-det, place);
  if (m == 3) return eps == hilbert_symbol(Rational(-1), -det, place);
  if (m == 4) return !is_local_square(det, place) || eps == hilbert_symbol(Rational(-1), Rational(-1), place);
  return true;
}

inline bool is_isotropic_local(const RatMatrix &G, long place) {
  RatVector d = diagonalize(G);
  std::size_t m = d.size();
  Rational det = 1;
  for (auto &x : d) {
    if (x == 0) return m > 0;
    det *= x;
  }
  if (m <= 1) return false;
  if (place == kInfinity) {
    bool pos = false, neg = false;
    for (auto &x : d) (x > 0 ? pos : neg) = true;
    return pos && neg;
  }
  return isotropic_from_invariants(m, det, hasse_invariant(d, place), place);
}

inline bool is_isotropic_local(const IntMatrix &G, long place) { return is_isotropic_local(to_rational(G), place); }

// Q_p-isotropy of q_L and q_{L^perp}. The invariants of q_{L^perp} follow from Q = q_L + q_{L^perp}
// over Q: det multiplies and eps(Q) = eps(q_L) eps(q_{L^perp}) (det q_L, det q_{L^perp}).
struct AmbientDiagonal {
  RatVector diag;
  Rational det = 1;
};

inline AmbientDiagonal ambient_diagonal(const QuadraticForm &Q) {
  AmbientDiagonal a{diagonalize(Q.rgram())};
  for (auto &x : a.diag) a.det *= x;
  return a;
}

// diagonalizes q_L once; each call answers for one odd prime
class StrongIsotropy {
public:
  StrongIsotropy(const QuadraticForm &Q, const Subspace &L, const AmbientDiagonal &amb)
      : n_(Q.dim()), k_(L.dim()), amb_(&amb) {
    if (k_ == 0 || k_ == n_) return;
    dl_ = diagonalize(to_rational(gram(Q, L)));
    for (auto &x : dl_) detL_ *= x;
    detP_ = amb.det * detL_; // same square class as det Q / det q_L
  }

  bool operator()(long p) const {
    if (p == 2 || p == kInfinity) throw MathError("strong isotropy is defined for odd primes");
    if (k_ == 0 || k_ == n_) return false;
    int epsL = hasse_invariant(dl_, p);
    if (!isotropic_from_invariants(k_, detL_, epsL, p)) return false;
    int epsP = hasse_invariant(amb_->diag, p) * epsL * hilbert_symbol(detL_, detP_, p);
    return isotropic_from_invariants(n_ - k_, detP_, epsP, p);
  }

private:
  std::size_t n_, k_;
  const AmbientDiagonal *amb_;
  RatVector dl_;
  Rational detL_ = 1, detP_ = 1;
};

inline bool stabilizer_strongly_isotropic(const QuadraticForm &Q, const Subspace &L, long p, const AmbientDiagonal &amb) {
  return StrongIsotropy(Q, L, amb)(p);
}

inline bool stabilizer_strongly_isotropic(const QuadraticForm &Q, const Subspace &L, long p) {
  return stabilizer_strongly_isotropic(Q, L, p, ambient_diagonal(Q));
}

// -d is a nonzero square mod p
inline bool neg_is_square_mod(const Integer &d, long p) { return legendre(-d, Integer(p)) == 1; }

// sufficient condition for strong isotropy of the stabilizer, in terms of (k, n-k) and the two discriminants
inline bool sufficient_criterion(long k, long nk, long p, const Integer &disc_L, const Integer &disc_Lperp) {
  if (p == 2) throw MathError("sufficient_criterion is stated for odd primes");
  const Integer P = p;
  bool pL = disc_L % P != 0, pP = disc_Lperp % P != 0;
  auto big = [](long a) { return a >= 5; };
  auto mid = [](long a) { return a >= 3 && a < 5; };
  if (big(k) && big(nk)) return true;
  if (mid(k) && big(nk) && pL) return true;
  if (big(k) && mid(nk) && pP) return true;
  if (mid(k) && mid(nk) && pL && pP) return true;
  if (k == 2 && big(nk) && neg_is_square_mod(disc_L, p)) return true;
  if (k == 2 && mid(nk) && pP && neg_is_square_mod(disc_L, p)) return true;
  if (big(k) && nk == 2 && neg_is_square_mod(disc_Lperp, p)) return true;
  if (mid(k) && nk == 2 && pL && neg_is_square_mod(disc_Lperp, p)) return true;
  return false;
}

inline std::vector<long> places_for(const std::vector<Rational> &values) {
  std::vector<long> out{kInfinity, 2};
  for (auto &v : values)
    for (auto &q : prime_factors(square_class_rep(v)))
      if (q != 2) {
        long pl = static_cast<long>(to_ll(q));
        if (std::find(out.begin(), out.end(), pl) == out.end()) out.push_back(pl);
      }
  return out;
}

// product of (a, b)_v over all places; 1 by reciprocity
inline int hilbert_product(const Rational &a, const Rational &b) {
  int s = 1;
  for (long v : places_for({a, b})) s *= hilbert_symbol(a, b, v);
  return s;
}

} // namespace latshape
