#pragma once

#include "latshape/exactalg.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace latshape {

class QuadraticForm {
public:
  QuadraticForm() = default;
  explicit QuadraticForm(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw MathError("quadratic form: Gram matrix is not symmetric");
    for (std::size_t i = 1; i <= gram_.rows(); ++i)
      if (det(gram_.block(0, 0, i, i)) <= 0) throw MathError("quadratic form: not positive definite");
  }
  static QuadraticForm sum_of_squares(std::size_t n) { return QuadraticForm(IntMatrix::identity(n)); }
  static QuadraticForm diagonal(const std::vector<long long> &d) {
    IntMatrix g(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
    return QuadraticForm(g);
  }

  std::size_t dim() const { return gram_.rows(); }
  const IntMatrix &gram() const { return gram_; }
  RatMatrix rgram() const { return to_rational(gram_); }
  Integer disc() const { return det(gram_); }
  bool is_sum_of_squares() const { return gram_ == IntMatrix::identity(dim()); }

  Integer value(const IntVector &x) const {
    Integer s = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) s += x[i] * gram_(i, j) * x[j];
    return s;
  }

  bool operator==(const QuadraticForm &o) const { return gram_ == o.gram_; }

private:
  IntMatrix gram_;
};

// A rational subspace L of Q^n, stored through the HNF basis of L(Z) = L cap Z^n.
class Subspace {
public:
  Subspace() = default;
  Subspace(std::size_t ambient, IntMatrix hnf_rows) : n_(ambient), basis_(std::move(hnf_rows)) {}

  static Subspace span(const IntMatrix &B) {
    if (B.rows() == 0) return Subspace(B.cols(), IntMatrix(0, B.cols()));
    return Subspace(B.cols(), saturate(B));
  }
  static Subspace span(const RatMatrix &B) {
    Integer d = common_denominator(B);
    return span(to_integer(B.scaled(Rational(d))));
  }
  static Subspace span(std::initializer_list<std::initializer_list<Integer>> rows) { return span(IntMatrix(rows)); }
  static Subspace zero(std::size_t n) { return Subspace(n, IntMatrix(0, n)); }
  static Subspace whole(std::size_t n) { return Subspace(n, IntMatrix::identity(n)); }

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return n_; }
  const IntMatrix &basis() const { return basis_; }
  RatMatrix rbasis() const { return to_rational(basis_); }

  // semicolon-joined rows, comma-joined entries
  std::string key() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      if (i) os << ";";
      for (std::size_t j = 0; j < basis_.cols(); ++j) os << (j ? "," : "") << basis_(i, j);
    }
    return os.str();
  }

  bool operator==(const Subspace &o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator!=(const Subspace &o) const { return !(*this == o); }
  bool operator<(const Subspace &o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return basis_ < o.basis_;
  }

private:
  std::size_t n_ = 0;
  IntMatrix basis_;
};

struct GlueGroup {
  IntVector invariants; // nontrivial invariant factors, each dividing the next
  Integer order() const {
    Integer o = 1;
    for (auto &d : invariants) o *= d;
    return o;
  }
};

struct SquareClass {
  int prime = 0;
  // odd p: Legendre symbol of the unit part; p = 2: unit part mod 8
  int unit = 1;
  bool operator==(const SquareClass &o) const { return prime == o.prime && unit == o.unit; }
};

struct LocalDisc {
  int valuation = 0;
  SquareClass unit_class;
};

struct RestrictedForm {
  RatMatrix basis; // rows spanning the lattice the form is evaluated on
  RatMatrix gram;
  Rational disc() const { return det(gram); }
};

struct RestrictedForms {
  RestrictedForm q_L, q_Lperp, tau_Lperp;
};

struct LambdaLattice {
  RatMatrix basis; // first k rows: L(Z); remaining rows: lifts into (Z^n)^#
  bool contains_integer_lattice = false;
};

inline RatMatrix gram_restriction(const QuadraticForm &Q, const RatMatrix &B) {
  return B * Q.rgram() * B.transpose();
}

inline IntMatrix gram_restriction(const QuadraticForm &Q, const IntMatrix &B) {
  return B * Q.gram() * B.transpose();
}

inline IntMatrix gram(const QuadraticForm &Q, const Subspace &L) { return gram_restriction(Q, L.basis()); }

inline Integer disc(const QuadraticForm &Q, const Subspace &L) { return det(gram(Q, L)); }

inline Rational disc(const QuadraticForm &Q, const RatMatrix &B) { return det(gram_restriction(Q, B)); }

// rows b*_i with <b*_i, b_j>_Q = delta_ij
inline RatMatrix dual_basis(const QuadraticForm &Q, const RatMatrix &B) {
  return inverse(gram_restriction(Q, B)) * B;
}

inline RatMatrix dual_lattice(const QuadraticForm &Q, const RatMatrix &B) { return canonical_basis(dual_basis(Q, B)); }

// basis of (Z^n)^#
inline RatMatrix integer_dual(const QuadraticForm &Q) { return inverse(Q.gram()); }

inline Subspace orth_complement(const QuadraticForm &Q, const Subspace &L) {
  std::size_t n = Q.dim();
  if (L.dim() == 0) return Subspace::whole(n);
  IntMatrix K = integer_kernel(L.basis() * Q.gram());
  if (K.rows() == 0) return Subspace::zero(n);
  return Subspace(n, hnf_basis(K));
}

// P with P x = Q-orthogonal projection of the column vector x onto L
inline RatMatrix projection_matrix(const QuadraticForm &Q, const Subspace &L) {
  std::size_t n = Q.dim();
  if (L.dim() == 0) return RatMatrix(n, n);
  RatMatrix B = L.rbasis();
  return B.transpose() * inverse(gram_restriction(Q, B)) * B * Q.rgram();
}

// rows of V projected onto L
inline RatMatrix project_rows(const QuadraticForm &Q, const Subspace &L, const RatMatrix &V) {
  return V * projection_matrix(Q, L).transpose();
}

inline RatMatrix project_lattice(const QuadraticForm &Q, const Subspace &L, const RatMatrix &lattice) {
  return canonical_basis(project_rows(Q, L, lattice));
}

inline GlueGroup glue_group_of_gram(const RatMatrix &G) {
  if (!is_integral(G)) throw MathError("glue group: lattice is not integral");
  GlueGroup g;
  for (auto &d : snf(to_integer(G)).d) {
    if (d == 0) throw MathError("glue group: degenerate Gram matrix");
    if (d != 1) g.invariants.push_back(d);
  }
  return g;
}

inline GlueGroup glue_group(const QuadraticForm &Q, const RatMatrix &B) {
  return glue_group_of_gram(gram_restriction(Q, B));
}

inline GlueGroup glue_group(const QuadraticForm &Q, const Subspace &L) { return glue_group(Q, L.rbasis()); }

// p-adic valuations of the invariant factors, dropping those prime to p
inline std::vector<int> local_glue(const GlueGroup &g, const Integer &p) {
  std::vector<int> out;
  for (auto &d : g.invariants) {
    int v = valuation(d, p);
    if (v > 0) out.push_back(v);
  }
  return out;
}

// L cap (Z^n)^#
inline RatMatrix dual_intersection(const QuadraticForm &Q, const Subspace &L) {
  if (L.dim() == 0) return RatMatrix(0, Q.dim());
  IntMatrix coords = saturate(L.basis() * Q.gram());
  return canonical_basis(to_rational(coords) * inverse(Q.gram()));
}

inline Integer index_iL(const QuadraticForm &Q, const Subspace &L) {
  if (L.dim() == 0) return 1;
  return quotient_order(L.rbasis(), dual_intersection(Q, L));
}

inline SquareClass square_class(const Rational &unit_part, const Integer &p) {
  Integer u = numerator(unit_part) * denominator(unit_part);
  SquareClass s;
  s.prime = p.convert_to<int>();
  if (p == 2) {
    s.unit = static_cast<int>(to_ll(mod(u, Integer(8))));
  } else {
    Integer e = boost::multiprecision::powm(mod(u, p), (p - 1) / 2, p);
    s.unit = e == 1 ? 1 : -1;
  }
  return s;
}

inline LocalDisc local_disc_of(const Rational &d, const Integer &p) {
  if (d == 0) throw MathError("local discriminant of a degenerate form");
  LocalDisc out;
  out.valuation = valuation(d, p);
  Rational unit = d;
  Rational pp(p);
  for (int i = 0; i < out.valuation; ++i) unit /= pp;
  for (int i = 0; i > out.valuation; --i) unit *= pp;
  out.unit_class = square_class(unit, p);
  return out;
}

inline LocalDisc local_disc(const QuadraticForm &Q, const Subspace &L, const Integer &p) {
  return local_disc_of(Rational(disc(Q, L)), p);
}

inline RestrictedForms restricted_forms(const QuadraticForm &Q, const Subspace &L) {
  Subspace P = orth_complement(Q, L);
  RestrictedForms r;
  r.q_L = {L.rbasis(), to_rational(gram(Q, L))};
  r.q_Lperp = {P.rbasis(), to_rational(gram(Q, P))};
  RatMatrix t = dual_intersection(Q, P);
  r.tau_Lperp = {t, gram_restriction(Q, t)};
  return r;
}

struct ContentSplit {
  Integer content;
  IntMatrix primitive;
};

inline ContentSplit content_and_primitive(const RatMatrix &G) {
  if (!is_integral(G)) throw MathError("content: Gram matrix is not integral");
  IntMatrix g = to_integer(G);
  Integer c = content(g);
  if (c == 0) throw MathError("content: zero Gram matrix");
  IntMatrix p = g;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) /= c;
  return {c, p};
}

inline ContentSplit content_and_primitive(const IntMatrix &G) { return content_and_primitive(to_rational(G)); }

// disc of the primitive form attached to L
inline Integer primitive_disc(const QuadraticForm &Q, const Subspace &L) {
  if (L.dim() == 0) return 1;
  auto s = content_and_primitive(gram(Q, L));
  return det(s.primitive);
}

// Intermediate lattice L(Z) + lifts of a basis of (Z^n)^# / (L cap (Z^n)^#).
// Lifts are chosen so that the result contains Z^n whenever such a choice exists.
namespace detail {

// Gram-matrix LLL (delta 3/4) in exact arithmetic; returns the unimodular T with T B reduced
inline IntMatrix lll_transform(const RatMatrix &G) {
  std::size_t r = G.rows();
  IntMatrix T = IntMatrix::identity(r);
  RatMatrix A = G;
  auto gso = [&](RatMatrix &mu, std::vector<Rational> &bb) {
    mu = RatMatrix(r, r);
    bb.assign(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = A(i, j);
        for (std::size_t l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * bb[l];
        mu(i, j) = s / bb[j];
      }
      Rational s = A(i, i);
      for (std::size_t l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * bb[l];
      bb[i] = s;
    }
  };
  std::size_t k = 1;
  RatMatrix mu;
  std::vector<Rational> bb;
  while (k < r) {
    gso(mu, bb);
    for (std::size_t j = k; j-- > 0;) {
      Rational m = mu(k, j);
      Integer q = floor_div(numerator(m) * 2 + denominator(m), denominator(m) * 2);
      if (q == 0) continue;
      for (std::size_t c = 0; c < r; ++c) T(k, c) -= q * T(j, c);
      A = to_rational(T) * G * to_rational(T).transpose();
      gso(mu, bb);
    }
    if (bb[k] >= (Rational(3, 4) - mu(k, k - 1) * mu(k, k - 1)) * bb[k - 1]) {
      ++k;
    } else {
      T.swap_rows(k, k - 1);
      A = to_rational(T) * G * to_rational(T).transpose();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return T;
}

// Replaces lifts by a reduced set spanning the same lattice modulo L(Z): LLL on the
// projections to the orthogonal complement, then size reduction against the basis of L(Z).
inline RatMatrix reduce_lifts(const QuadraticForm &Q, const RatMatrix &Lb, RatMatrix lifts) {
  const RatMatrix &M = Q.rgram();
  std::size_t k = Lb.rows(), r = lifts.rows();
  RatMatrix GL = Lb * M * Lb.transpose();
  RatMatrix GLi = k ? inverse(GL) : GL;
  auto project_out = [&](const RatMatrix &X) { // component orthogonal to L
    if (!k) return X;
    return X - X * M * Lb.transpose() * GLi * Lb;
  };
  if (r > 1) {
    RatMatrix P = project_out(lifts);
    IntMatrix T = lll_transform(P * M * P.transpose());
    lifts = to_rational(T) * lifts;
  }
  if (k) {
    RatMatrix C = lifts * M * Lb.transpose() * GLi; // coefficients of the L-component
    for (std::size_t i = 0; i < r; ++i) {
      IntVector q(k);
      for (std::size_t j = 0; j < k; ++j) {
        const Rational &m = C(i, j);
        q[j] = floor_div(numerator(m) * 2 + denominator(m), denominator(m) * 2);
      }
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < lifts.cols(); ++c) lifts(i, c) -= Rational(q[j]) * Lb(j, c);
    }
  }
  return RatMatrix::vstack(Lb, lifts);
}

} // namespace detail

inline LambdaLattice lambda_L(const QuadraticForm &Q, const Subspace &L) {
  std::size_t n = Q.dim(), k = L.dim();
  const IntMatrix &M = Q.gram();
  RatMatrix Minv = inverse(M);
  // coordinates c = x M identify (Z^n)^# with Z^n
  IntMatrix Lc = L.basis() * M;
  IntMatrix S = k ? saturate(Lc) : IntMatrix(0, n);
  LambdaLattice out;
  if (k == n) {
    out.basis = L.rbasis();
    out.contains_integer_lattice = true;
    return out;
  }
  IntMatrix K = integer_kernel(S).transpose(); // n x (n-k), c -> c K has kernel S
  IntMatrix MK = M * K;
  SnfResult s = snf(MK);
  IntMatrix KV = K * s.V;
  // z_j = j-th row of U M maps to e_j f_j
  IntMatrix UM = s.U * M;
  // lifts yhat_j with yhat_j KV = f_j
  SnfResult t = snf(KV.transpose());
  std::size_t r = n - k;
  for (std::size_t i = 0; i < r; ++i)
    if (t.d[i] != 1) throw MathError("lambda_L: kernel basis is not saturated");
  IntMatrix R = (t.V.block(0, 0, n, r) * t.U).transpose(); // r x n, R KV = I
  // canonical representatives modulo S
  IntMatrix Sh = k ? hnf_basis(S) : IntMatrix(0, n);
  auto reduce_mod_S = [&](IntVector v) {
    for (std::size_t i = 0; i < Sh.rows(); ++i) {
      std::size_t piv = 0;
      while (Sh(i, piv) == 0) ++piv;
      Integer q = floor_div(v[piv], Sh(i, piv));
      for (std::size_t j = 0; j < n; ++j) v[j] -= q * Sh(i, j);
    }
    return v;
  };
  // torsion T = S / Lc as explicit representatives
  std::vector<IntVector> torsion;
  if (k) {
    auto X = solve_left(to_rational(S), to_rational(Lc));
    SnfResult ts = snf(to_integer(*X));
    // Lc = X S,  U X V = D  ->  generators are rows of V^{-1} S with orders d_i
    IntMatrix gens = unimodular_inverse(ts.V) * S;
    torsion.push_back(IntVector(n, 0));
    for (std::size_t i = 0; i < k; ++i) {
      if (ts.d[i] == 1) continue;
      std::vector<IntVector> next;
      for (auto &base : torsion)
        for (Integer a = 0; a < ts.d[i]; ++a) {
          IntVector v = base;
          for (std::size_t j = 0; j < n; ++j) v[j] += a * gens(i, j);
          next.push_back(v);
        }
      torsion = std::move(next);
    }
  } else {
    torsion.push_back(IntVector(n, 0));
  }
  RatMatrix Lcr = to_rational(Lc);
  auto in_Lc = [&](const IntVector &v) {
    if (k == 0) {
      for (auto &x : v)
        if (x != 0) return false;
      return true;
    }
    return lattice_contains(Lcr, to_rational(IntMatrix::from_rows({v})).row(0));
  };
  IntMatrix lifts(r, n);
  bool all_found = true;
  for (std::size_t j = 0; j < r; ++j) {
    IntVector y = reduce_mod_S(R.row(j));
    const Integer &e = s.d[j];
    IntVector z = UM.row(j);
    bool found = false;
    for (auto &tv : torsion) {
      IntVector cand(n);
      for (std::size_t c = 0; c < n; ++c) cand[c] = e * (y[c] + tv[c]) - z[c];
      if (in_Lc(cand)) {
        for (std::size_t c = 0; c < n; ++c) y[c] += tv[c];
        found = true;
        break;
      }
    }
    all_found = all_found && found;
    lifts.set_row(j, y);
  }
  out.basis = detail::reduce_lifts(Q, L.rbasis(), to_rational(lifts) * Minv);
  out.contains_integer_lattice = all_found && lattice_contains(out.basis, to_rational(IntMatrix::identity(n)));
  return out;
}

inline bool is_Q_orthogonal(const QuadraticForm &Q, const RatMatrix &g) {
  return g.transpose() * Q.rgram() * g == Q.rgram();
}

// smallest l with p^l g and p^l g^{-1} p-integral
inline int ord_p(const RatMatrix &g, const Integer &p) {
  int l = std::numeric_limits<int>::min();
  RatMatrix gi = inverse(g);
  for (const RatMatrix *m : {&g, static_cast<const RatMatrix *>(&gi)})
    for (const auto &x : m->data())
      if (x != 0) l = std::max(l, -valuation(x, p));
  return std::max(l, 0);
}

// g acts on column vectors; g must lie in SO_Q(Q)
inline Subspace rotate_subspace(const QuadraticForm &Q, const RatMatrix &g, const Subspace &L) {
  if (g.rows() != Q.dim() || g.cols() != Q.dim()) throw MathError("rotate_subspace: shape mismatch");
  if (!is_Q_orthogonal(Q, g)) throw MathError("rotate_subspace: g is not Q-orthogonal");
  if (det(g) != 1) throw MathError("rotate_subspace: det g != 1");
  if (L.dim() == 0) return L;
  return Subspace::span(L.rbasis() * g.transpose());
}

} // namespace latshape
