#pragma once

#include "latshape/isometry.hpp"
#include "latshape/quadlattice.hpp"
#include "latshape/shortvec.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <map>
#include <set>
#include <tuple>

namespace latshape {

struct BoundExceeded : MathError {
  using MathError::MathError;
};

constexpr long long kDefaultMaxCandidates = 200'000'000;

inline long long max_candidates_from_env() {
  if (const char *s = std::getenv("LATSHAPE_MAX_CANDIDATES")) {
    char *end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return kDefaultMaxCandidates;
}

// ceil((4/3)^(k(k-1)/2) * D)
inline Integer hermite_bound(std::size_t k, const Integer &D) {
  std::size_t e = k * (k - 1) / 2;
  Integer num = pow(Integer(4), static_cast<unsigned>(e)) * D;
  Integer den = pow(Integer(3), static_cast<unsigned>(e));
  return (num + den - 1) / den;
}

namespace detail {

// Walks flags b_1, ..., b_k of primitive vectors whose Gram-Schmidt norms s_i obey the
// constraints satisfied by a Hermite-Korkine-Zolotarev basis: s_{i+1} >= (3/4) s_i and
// d_{i} * s_i^r * (3/4)^(r(r-1)/2) <= D with r vectors still to choose.
class FlagSearch {
public:
  using Keys = std::map<long long, std::set<SmallVector>>;

  FlagSearch(const QuadraticForm &Q, std::size_t k, long long dlo, long long dhi, long long cap)
      : Q_(Q), n_(Q.dim()), k_(k), dlo_(dlo), dhi_(dhi), cap_(cap) {}

  // flattened HNF bases of L(Z), grouped by discriminant
  Keys run() {
    if (k_ == 0 || k_ > n_) return out_;
    IntMatrix B(0, n_);
    rec(B, IntMatrix::identity(n_), 1, 0.0L);
    return std::move(out_);
  }

  long long candidates() const { return count_; }

private:
  void rec(const IntMatrix &B, const IntMatrix &C, long long d, long double s_prev) {
    std::size_t i = B.rows();
    std::size_t r = k_ - i;
    // projected Gram of the complement rows, scaled by d to be integral
    IntMatrix Gcc = C * Q_.gram() * C.transpose();
    IntMatrix Gs = Gcc.scaled(Integer(d));
    if (i > 0) {
      IntMatrix Gbc = B * Q_.gram() * C.transpose();
      IntMatrix Gbb = B * Q_.gram() * B.transpose();
      RatMatrix adj = inverse(Gbb).scaled(Rational(d));
      IntMatrix corr = to_integer(to_rational(Gbc.transpose()) * adj * to_rational(Gbc));
      Gs = Gs - corr;
    }
    long long lo, hi;
    if (r == 1) {
      lo = dlo_;
      hi = dhi_;
    } else {
      long double e = static_cast<long double>(r * (r - 1) / 2);
      long double smax = std::pow(static_cast<long double>(dhi_) * std::pow(4.0L / 3.0L, e) / d, 1.0L / r);
      hi = static_cast<long long>(std::floor(smax * d * (1 + 1e-12L) + 1e-9L));
      lo = 1;
    }
    if (i > 0) lo = std::max(lo, static_cast<long long>(std::ceil(0.75L * s_prev * d - 1e-9L)));
    if (lo < 1) lo = 1;
    if (hi < lo) return;
    SmallMatrix G = to_small(Gs);
    SmallMatrix Bs = to_small(B), Cs = to_small(C);
    ShortVectors sv(G);
    sv.run(lo, hi, true, [&](const SmallVector &y, long long val) {
      if (++count_ > cap_) throw BoundExceeded("enumeration exceeded the candidate cap");
      long long g = 0;
      for (auto c : y) g = std::gcd(g, c < 0 ? -c : c);
      if (g != 1) return true;
      SmallVector b(n_, 0);
      for (std::size_t t = 0; t < y.size(); ++t)
        if (y[t])
          for (std::size_t j = 0; j < n_; ++j) b[j] += y[t] * Cs[t][j];
      if (r == 1) {
        SmallMatrix full = Bs;
        full.push_back(b);
        out_[val].insert(small_hnf(std::move(full)));
        return true;
      }
      IntMatrix Y(1, y.size());
      for (std::size_t j = 0; j < y.size(); ++j) Y(0, j) = y[j];
      IntMatrix U = complete_to_unimodular(Y) * C;
      IntMatrix C2 = U.select_rows(1, U.rows() - 1);
      IntMatrix B2 = IntMatrix::vstack(B, from_small({b}));
      rec(B2, C2, val, static_cast<long double>(val) / d);
      return true;
    });
  }

  const QuadraticForm &Q_;
  std::size_t n_, k_;
  long long dlo_, dhi_, cap_;
  long long count_ = 0;
  Keys out_;
};

inline Subspace subspace_from_key(std::size_t n, std::size_t k, const SmallVector &key) {
  IntMatrix B(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = key[i * n + j];
  return Subspace(n, B);
}

} // namespace detail

// Calls f(D, list) for each D in [dlo, dhi] in increasing order, list sorted by HNF.
template <class F>
void for_each_discriminant(const QuadraticForm &Q, std::size_t k, long long dlo, long long dhi, F &&f,
                           long long cap = -1) {
  if (dlo < 1 || dhi < dlo) throw MathError("enumerate: invalid discriminant range");
  if (cap < 0) cap = max_candidates_from_env();
  std::size_t n = Q.dim();
  detail::FlagSearch::Keys keys;
  if (k > 0 && k <= n) {
    detail::FlagSearch fs(Q, k, dlo, dhi, cap);
    keys = fs.run();
  }
  for (long long D = dlo; D <= dhi; ++D) {
    std::vector<Subspace> list;
    if (k == 0) {
      if (D == 1) list.push_back(Subspace::zero(n));
    } else if (auto it = keys.find(D); it != keys.end()) {
      for (auto &key : it->second) list.push_back(detail::subspace_from_key(n, k, key));
      keys.erase(it);
    }
    f(D, std::move(list));
  }
}

// H(D) for every D in [dlo, dhi], each list sorted by HNF
inline std::map<long long, std::vector<Subspace>> enumerate_range(const QuadraticForm &Q, std::size_t k, long long dlo,
                                                                  long long dhi, long long cap = -1) {
  if (dlo < 1 || dhi < dlo) throw MathError("enumerate: invalid discriminant range");
  if (cap < 0) cap = max_candidates_from_env();
  std::map<long long, std::vector<Subspace>> out;
  std::size_t n = Q.dim();
  for (long long D = dlo; D <= dhi; ++D) out[D];
  if (k == 0) {
    if (dlo <= 1) out[1].push_back(Subspace::zero(n));
    return out;
  }
  if (k > n) return out;
  detail::FlagSearch fs(Q, k, dlo, dhi, cap);
  auto keys = fs.run();
  for (auto &[D, set] : keys)
    for (auto &key : set) out[D].push_back(detail::subspace_from_key(n, k, key));
  return out;
}

inline std::vector<Subspace> enumerate_subspaces(const QuadraticForm &Q, std::size_t k, long long D, long long cap = -1) {
  return enumerate_range(Q, k, D, D, cap)[D];
}

struct SchmidtTriple {
  Integer h;
  Subspace Lprime; // in Q^(n-1)
  RatVector v;     // in the Q-orthogonal complement of L' inside Q^(n-1)
};

namespace detail {

inline Subspace embed(const Subspace &L) {
  IntMatrix B(L.dim(), L.ambient() + 1);
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.ambient(); ++j) B(i, j) = L.basis()(i, j);
  return Subspace(L.ambient() + 1, B);
}

// basis of pi_{L'^perp}(Z^m) and the integer rows whose projections they are
struct ProjectedLattice {
  RatMatrix basis;  // r x m
  IntMatrix preimage; // r x m
};

inline ProjectedLattice projected_integers(const Subspace &Lp) {
  std::size_t m = Lp.ambient();
  QuadraticForm Q = QuadraticForm::sum_of_squares(m);
  RatMatrix P = RatMatrix::identity(m) - projection_matrix(Q, Lp); // onto L'^perp
  RatMatrix rows = P.transpose();                                   // row j = pi(e_j)
  Integer d = common_denominator(rows);
  auto h = hnf(to_integer(rows.scaled(Rational(d))));
  ProjectedLattice out;
  out.basis = to_rational(h.H.select_rows(0, h.rank)).scaled(Rational(1) / Rational(d));
  out.preimage = h.U.select_rows(0, h.rank);
  return out;
}

} // namespace detail

inline SchmidtTriple schmidt_decompose(const Subspace &L) {
  std::size_t n = L.ambient(), k = L.dim();
  if (n == 0 || k == 0) throw MathError("schmidt_decompose: trivial subspace");
  const IntMatrix &B = L.basis();
  IntMatrix c(1, k);
  for (std::size_t i = 0; i < k; ++i) c(0, i) = B(i, n - 1);
  if (c.is_zero()) throw MathError("schmidt_decompose: subspace lies in the coordinate hyperplane");
  // lam * c = h via the HNF transform of the column
  auto hc = hnf(c.transpose());
  Integer h = hc.H(0, 0);
  IntMatrix w = hc.U.select_rows(0, 1) * B;
  IntMatrix mu = hc.U.select_rows(1, k - 1) * B; // last coordinate vanishes
  IntMatrix Lp(k - 1, n - 1);
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) Lp(i, j) = mu(i, j);
  Subspace Lprime(n - 1, k > 1 ? hnf_basis(Lp) : IntMatrix(0, n - 1));
  RatVector u(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) u[j] = Rational(w(0, j));
  QuadraticForm Q = QuadraticForm::sum_of_squares(n - 1);
  RatMatrix um(1, n - 1);
  um.set_row(0, u);
  RatMatrix pu = um - project_rows(Q, Lprime, um);
  return {h, Lprime, pu.row(0)};
}

inline Subspace schmidt_compose(const Integer &h, const Subspace &Lprime, const RatVector &v) {
  if (h < 1) throw MathError("schmidt_compose: h must be positive");
  std::size_t m = Lprime.ambient();
  if (v.size() != m) throw MathError("schmidt_compose: dimension mismatch");
  auto pl = detail::projected_integers(Lprime);
  auto x = solve_left(pl.basis, v);
  if (!x) throw MathError("schmidt_compose: v is not in the orthogonal complement of L'");
  Integer g = h;
  for (auto &c : *x) {
    if (!is_integer(c)) throw MathError("schmidt_compose: v is not a projection of an integer vector");
    g = gcd(g, numerator(c));
  }
  if (g != 1) throw MathError("schmidt_compose: (h, v) is not coprime");
  IntMatrix xi(1, x->size());
  for (std::size_t i = 0; i < x->size(); ++i) xi(0, i) = numerator((*x)[i]);
  IntMatrix u = xi * pl.preimage;
  IntMatrix B(Lprime.dim() + 1, m + 1);
  for (std::size_t i = 0; i < Lprime.dim(); ++i)
    for (std::size_t j = 0; j < m; ++j) B(i, j) = Lprime.basis()(i, j);
  for (std::size_t j = 0; j < m; ++j) B(Lprime.dim(), j) = u(0, j);
  B(Lprime.dim(), m) = h;
  return Subspace::span(B);
}

// Recursive enumeration for the sum of squares form through Schmidt triples.
class SchmidtEnumerator {
public:
  const std::vector<Subspace> &get(std::size_t n, std::size_t k, long long D) {
    auto key = std::make_tuple(n, k, D);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::set<Subspace> res;
    if (k == 0) {
      if (D == 1) res.insert(Subspace::zero(n));
    } else if (k == n) {
      if (D == 1) res.insert(Subspace::whole(n));
    } else if (k < n) {
      for (auto &L : get(n - 1, k, D)) res.insert(detail::embed(L));
      for (long long Dp = 1; Dp <= D; ++Dp)
        for (auto &Lp : get(n - 1, k - 1, Dp)) add_nondegenerate(Lp, Dp, D, res);
    }
    return memo_[key] = std::vector<Subspace>(res.begin(), res.end());
  }

private:
  void add_nondegenerate(const Subspace &Lp, long long Dp, long long D, std::set<Subspace> &res) {
    auto pl = detail::projected_integers(Lp);
    std::size_t r = pl.basis.rows();
    // form h^2 + Q(v) on Z (last coordinate) plus the projected lattice
    QuadraticForm Q = QuadraticForm::sum_of_squares(Lp.ambient());
    RatMatrix Gv = gram_restriction(Q, pl.basis);
    RatMatrix G(r + 1, r + 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) G(i, j) = Gv(i, j);
    G(r, r) = 1;
    Integer den = common_denominator(G);
    Rational target = Rational(D) / Rational(Dp) * Rational(den);
    if (!is_integer(target)) return;
    long long t = to_ll(numerator(target));
    ShortVectors sv(to_small(to_integer(G.scaled(Rational(den)))));
    sv.run(t, t, true, [&](const SmallVector &x, long long) {
      if (x[r] <= 0) return true;
      long long g = 0;
      for (auto c : x) g = std::gcd(g, c < 0 ? -c : c);
      if (g != 1) return true;
      RatVector v(Lp.ambient(), Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < Lp.ambient(); ++j) v[j] += Rational(x[i]) * pl.basis(i, j);
      res.insert(schmidt_compose(Integer(x[r]), Lp, v));
      return true;
    });
  }

  std::map<std::tuple<std::size_t, std::size_t, long long>, std::vector<Subspace>> memo_;
};

inline std::vector<Subspace> schmidt_enumerate(std::size_t n, std::size_t k, long long D) {
  SchmidtEnumerator e;
  return e.get(n, k, D);
}

enum class NonEmptiness { NonEmpty, Empty, AlwaysNonEmpty, NoClosedForm };

inline const char *to_string(NonEmptiness c) {
  switch (c) {
  case NonEmptiness::NonEmpty: return "nonempty";
  case NonEmptiness::Empty: return "empty";
  case NonEmptiness::AlwaysNonEmpty: return "always_nonempty";
  case NonEmptiness::NoClosedForm: return "no_closed_form";
  }
  return "?";
}

// closed-form emptiness of H(D) for the sum of squares form
inline NonEmptiness nonempty_criterion(std::size_t n, std::size_t k, long long D) {
  if (D < 1) throw MathError("nonempty_criterion: D must be positive");
  if (k > n) return NonEmptiness::Empty;
  k = std::min(k, n - k);
  if (k == 0) return D == 1 ? NonEmptiness::NonEmpty : NonEmptiness::Empty;
  if (n >= 5) return NonEmptiness::AlwaysNonEmpty;
  auto verdict = [](bool empty) { return empty ? NonEmptiness::Empty : NonEmptiness::NonEmpty; };
  if (n == 3 && k == 1) {
    long long r = D % 8;
    return verdict(r == 0 || r == 4 || r == 7);
  }
  if (n == 4 && k == 1) return verdict(D % 8 == 0);
  if (n == 4 && k == 2) {
    long long r = D % 16;
    return verdict(r == 0 || r == 7 || r == 12 || r == 15);
  }
  return NonEmptiness::NoClosedForm;
}

inline std::size_t count_small_primitive_shapes(const QuadraticForm &Q, const std::vector<Subspace> &H, const Integer &M) {
  std::size_t c = 0;
  for (auto &L : H)
    if (primitive_disc(Q, L) <= M || primitive_disc(Q, orth_complement(Q, L)) <= M) ++c;
  return c;
}

inline std::size_t count_small_primitive_shapes(const QuadraticForm &Q, std::size_t k, long long D, const Integer &M) {
  return count_small_primitive_shapes(Q, enumerate_subspaces(Q, k, D), M);
}

} // namespace latshape
