#pragma once

#include "latshape/grassenum.hpp"
#include "latshape/io.hpp"
#include "latshape/localarith.hpp"
#include "latshape/moduli.hpp"
#include "latshape/oracle.hpp"

#include <random>
#include <sstream>

namespace latshape {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string &what = {}) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (auto &c : checks)
      if (c.failures) return false;
    return true;
  }

  CheckResult &check(const std::string &name) {
    for (auto &c : checks)
      if (c.name == name) return c;
    checks.push_back({name});
    return checks.back();
  }

  Json to_json() const {
    Json j{{"suite", suite}, {"pass", ok()}, {"checks", Json::array()}};
    for (auto &c : checks) {
      Json cj{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"pass", c.failures == 0}};
      if (c.failures) cj["first_failure"] = c.first_failure;
      j["checks"].push_back(cj);
    }
    return j;
  }
};

struct VerifyParams {
  std::vector<QuadraticForm> forms; // empty: built-in suite of forms
  std::size_t samples = 200;        // random subspaces per suite
  std::uint64_t seed = 1;
  long long dmax = 0;               // 0: suite default
};

inline const std::vector<std::string> &verify_suites() {
  static const std::vector<std::string> s{"glue",    "duality",  "indices",  "orders",      "primitive", "lambda",
                                          "schmidt", "nonempty", "isotropy", "reciprocity", "moduli",    "continuity"};
  return s;
}

// sum of squares in dimensions 3 to 6, diag(1,1,2), diag(1,2,3) and the A_4 root lattice
inline std::vector<QuadraticForm> default_verify_forms() {
  return {QuadraticForm::sum_of_squares(3),
          QuadraticForm::sum_of_squares(4),
          QuadraticForm::sum_of_squares(5),
          QuadraticForm::sum_of_squares(6),
          QuadraticForm::diagonal({1, 1, 2}),
          QuadraticForm::diagonal({1, 2, 3}),
          QuadraticForm(IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}})};
}

// random proper nonzero subspace spanned by small integer vectors
inline Subspace random_subspace(std::size_t n, std::mt19937_64 &rng, std::size_t k = 0, int range = 3) {
  if (n < 2) throw MathError("random_subspace: need n >= 2");
  if (k == 0) k = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
  std::uniform_int_distribution<int> u(-range, range);
  IntMatrix B(k, n);
  do {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
  } while (rank(B) < k);
  return Subspace::span(B);
}

// Lambda cap S for a full lattice Lambda (rows of B) and a subspace S
inline RatMatrix intersect_with_subspace(const QuadraticForm &Q, const RatMatrix &B, const Subspace &S) {
  Subspace P = orth_complement(Q, S);
  if (P.dim() == 0) return canonical_basis(B);
  RatMatrix C = B * Q.rgram() * P.rbasis().transpose();
  Integer d = common_denominator(C);
  IntMatrix K = integer_kernel(to_integer(C.scaled(Rational(d))).transpose());
  return canonical_basis(to_rational(K) * B);
}

namespace detail {

inline std::string describe(const QuadraticForm &Q, const Subspace &L) {
  return "Q=" + to_json(Q.gram()).dump() + " L=" + to_json(L.basis()).dump();
}

inline std::vector<QuadraticForm> forms_of(const VerifyParams &p) { return p.forms.empty() ? default_verify_forms() : p.forms; }

// an exception on one sample is recorded as a failure of that sample
template <class F> void for_random_subspaces(const VerifyParams &p, VerifyReport &r, F &&f) {
  std::mt19937_64 rng(p.seed);
  auto forms = forms_of(p);
  for (std::size_t s = 0; s < p.samples; ++s) {
    const QuadraticForm &Q = forms[s % forms.size()];
    Subspace L = random_subspace(Q.dim(), rng);
    try {
      f(Q, L);
    } catch (const MathError &e) {
      r.check("no arithmetic errors").record(false, describe(Q, L) + ": " + e.what());
    }
  }
}

inline Integer disc_Q(const QuadraticForm &Q) { return det(Q.gram()); }

inline std::vector<Integer> nontrivial(std::vector<Integer> v) {
  std::erase(v, Integer(1));
  return v;
}

inline void suite_glue(const VerifyParams &p, VerifyReport &r) {
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    Integer d = disc(Q, L);
    r.check("glue order equals disc").record(glue_group(Q, L).order() == d, describe(Q, L));
    RatMatrix dual = dual_lattice(Q, L.rbasis());
    r.check("[L(Z)^# : L(Z)] equals disc").record(quotient_order(L.rbasis(), dual) == d, describe(Q, L));
    Integer prod = 1;
    for (auto &q : prime_factors(d)) {
      int e = 0;
      for (int l : local_glue(glue_group(Q, L), q)) e += l;
      prod *= pow(q, static_cast<unsigned>(e));
    }
    r.check("local glue exponents recover disc").record(prod == d, describe(Q, L));
  });
}

inline void suite_duality(const VerifyParams &p, VerifyReport &r) {
  std::mt19937_64 rng(p.seed ^ 0x5bd1e995);
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    std::size_t n = Q.dim();
    RatMatrix LZ = L.rbasis();
    r.check("double dual of L(Z)").record(dual_lattice(Q, dual_lattice(Q, LZ)) == canonical_basis(LZ), describe(Q, L));
    // a random full-rank sublattice of Z^n
    IntMatrix B(n, n);
    std::uniform_int_distribution<int> u(-4, 4);
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B(i, j) = u(rng);
    } while (det(B) == 0);
    RatMatrix Br = to_rational(B);
    r.check("double dual of a full lattice").record(dual_lattice(Q, dual_lattice(Q, Br)) == canonical_basis(Br), describe(Q, L));
    r.check("quotient duality").record(quotient_invariants(Br, RatMatrix::identity(n)) ==
                                           quotient_invariants(integer_dual(Q), dual_lattice(Q, Br)),
                                       describe(Q, L));
    RatMatrix projected_dual = project_lattice(Q, L, integer_dual(Q));
    r.check("projection of the dual is the dual of L(Z)").record(same_lattice(projected_dual, dual_lattice(Q, LZ)), describe(Q, L));
    Subspace P = orth_complement(Q, L);
    RatMatrix piL = project_lattice(Q, L, RatMatrix::identity(n));
    RatMatrix piP = project_lattice(Q, P, RatMatrix::identity(n));
    r.check("projection quotients of L and L^perp agree")
        .record(detail::nontrivial(quotient_invariants(LZ, piL)) == detail::nontrivial(quotient_invariants(P.rbasis(), piP)), describe(Q, L));
  });
}

inline void suite_indices(const VerifyParams &p, VerifyReport &r) {
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    Subspace P = orth_complement(Q, L);
    std::size_t n = Q.dim(), k = L.dim();
    Integer dQ = disc_Q(Q), iL = index_iL(Q, L), iP = index_iL(Q, P), dL = disc(Q, L), dP = disc(Q, P);
    std::string w = describe(Q, L);
    r.check("i(L) i(L^perp) = disc(Q)").record(iL * iP == dQ, w);
    bool local_ok = true;
    for (auto &q : prime_factors(dQ * iL * iP))
      local_ok = local_ok && valuation(iL, q) + valuation(iP, q) == valuation(dQ, q);
    r.check("i(L) i(L^perp) = disc(Q) at each prime").record(local_ok, w);
    r.check("disc comparison").record(Rational(dL) / Rational(iL) <= Rational(dP) && dP <= iP * dL, w);
    Integer gL = content(gram(Q, L)), gP = content(gram(Q, P));
    // the two-sided ord_p bound only holds when k = n - k; otherwise only the larger side is controlled
    Integer gBig = k >= n - k ? gL : gP, gSmall = k >= n - k ? gP : gL;
    bool ord_ok = true;
    for (auto &q : prime_factors(dQ * dL)) {
      int a = valuation(gL, q), b = valuation(gP, q), v = valuation(dQ, q);
      ord_ok = ord_ok && (k == n - k ? std::abs(a - b) <= v : valuation(gBig, q) - valuation(gSmall, q) <= v);
    }
    r.check("ord_p of q_L and q_L^perp within ord_p disc(Q)").record(ord_ok, w);
    if (k == n - k) {
      r.check("gcd comparison").record(pow(gP, static_cast<unsigned>(k)) <= pow(gL, static_cast<unsigned>(k)) * pow(iP, static_cast<unsigned>(k)), w);
      r.check("gcd comparison, reversed").record(pow(gL, static_cast<unsigned>(k)) <= pow(gP, static_cast<unsigned>(k)) * pow(iL, static_cast<unsigned>(k)), w);
    }
    if (k > n - k) r.check("gcd(q_L) divides disc(Q)").record(dQ % gL == 0, w);
    if (k < n - k) r.check("gcd(q_L^perp) divides disc(Q)").record(dQ % gP == 0, w);
  });
}

inline void suite_orders(const VerifyParams &p, VerifyReport &r) {
  std::map<std::string, std::shared_ptr<OrthogonalGroup>> groups;
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    Integer d = disc(Q, L), prod = 1;
    for (auto &q : prime_factors(d)) prod *= pow(q, static_cast<unsigned>(local_disc(Q, L, q).valuation));
    r.check("disc is the product of its local orders").record(prod == d, describe(Q, L));
    if (Q.dim() > 5) return; // group enumeration cost
    auto key = to_json(Q.gram()).dump();
    auto &g = groups[key];
    if (!g) g = std::make_shared<OrthogonalGroup>(Q);
    std::size_t s = g->stabilizer_order(L);
    r.check("stabilizer order divides |SO_Q(Z)|").record(s >= 1 && g->order() % s == 0, describe(Q, L));
    std::size_t sp = g->stabilizer_order(orth_complement(Q, L));
    r.check("L and L^perp have the same stabilizer").record(s == sp, describe(Q, L));
  });
}

inline void suite_primitive(const VerifyParams &p, VerifyReport &r) {
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    auto rf = restricted_forms(Q, L);
    Subspace P = orth_complement(Q, L);
    Integer iP = index_iL(Q, P);
    r.check("disc(q_L^perp) = i(L^perp)^2 disc(tau)").record(det(rf.q_Lperp.gram) == Rational(iP * iP) * det(rf.tau_Lperp.gram), describe(Q, L));
    auto cp = content_and_primitive(rf.q_L.gram);
    r.check("content times primitive part").record(to_rational(cp.primitive).scaled(Rational(cp.content)) == rf.q_L.gram && content(cp.primitive) == 1, describe(Q, L));
  });
}

inline void suite_lambda(const VerifyParams &p, VerifyReport &r) {
  for_random_subspaces(p, r, [&](const QuadraticForm &Q, const Subspace &L) {
    std::size_t n = Q.dim();
    std::string w = describe(Q, L);
    LambdaLattice lam = lambda_L(Q, L);
    Subspace P = orth_complement(Q, L);
    r.check("L cap Lambda_L = L(Z)").record(intersect_with_subspace(Q, lam.basis, L) == canonical_basis(L.rbasis()), w);
    r.check("projection of Lambda_L to L^perp is L^perp(Z)^#").record(same_lattice(project_lattice(Q, P, lam.basis), dual_lattice(Q, P.rbasis())), w);
    r.check("Lambda_L^# cap L^perp = L^perp(Z)").record(intersect_with_subspace(Q, dual_lattice(Q, lam.basis), P) == canonical_basis(P.rbasis()), w);
    r.check("Lambda_L inside (Z^n)^#").record(lattice_contains(integer_dual(Q), lam.basis), w);
    bool contains = lattice_contains(lam.basis, RatMatrix::identity(n));
    r.check("containment flag is accurate").record(contains == lam.contains_integer_lattice, w);
    // [Z^n : Lambda_L cap Z^n] = [Lambda_L + Z^n : Lambda_L], computed after scaling by d
    Integer d = common_denominator(lam.basis);
    IntMatrix scaled = to_integer(lam.basis.scaled(Rational(d)));
    IntMatrix sum = hnf_basis(IntMatrix::vstack(scaled, IntMatrix::identity(n).scaled(d)));
    Integer index_in_Zn = abs(det(scaled)) / abs(det(sum));
    r.check("[Z^n : Lambda_L cap Z^n] <= disc(Q)").record(index_in_Zn <= disc_Q(Q), w);
  });
}

inline void suite_schmidt(const VerifyParams &p, VerifyReport &r) {
  long long dmax = p.dmax > 0 ? p.dmax : 30;
  SchmidtEnumerator se;
  struct Case {
    std::size_t n, k;
    long long dmax;
  };
  std::vector<Case> cases{{3, 1, dmax}, {4, 1, dmax}, {4, 2, std::min<long long>(dmax, 40)}};
  for (auto &c : cases) {
    QuadraticForm Q = QuadraticForm::sum_of_squares(c.n);
    auto brute = enumerate_range(Q, c.k, 1, c.dmax);
    for (long long D = 1; D <= c.dmax; ++D) {
      const auto &s = se.get(c.n, c.k, D);
      std::ostringstream w;
      w << "(n,k,D)=(" << c.n << "," << c.k << "," << D << ")";
      r.check("Schmidt enumeration equals direct enumeration").record(s == brute[D], w.str());
      for (auto &L : s) {
        bool in_hyperplane = true;
        for (std::size_t i = 0; i < L.dim(); ++i) in_hyperplane = in_hyperplane && L.basis()(i, c.n - 1) == 0;
        if (in_hyperplane) continue;
        auto t = schmidt_decompose(L);
        r.check("compose after decompose is the identity").record(schmidt_compose(t.h, t.Lprime, t.v) == L, w.str() + " L=" + L.key());
        Rational qv = 0;
        for (auto &x : t.v) qv += x * x;
        Integer dp = t.Lprime.dim() ? disc(QuadraticForm::sum_of_squares(c.n - 1), t.Lprime) : Integer(1);
        r.check("disc(L) = disc(L')(h^2 + Q(v))").record(Rational(D) == Rational(dp) * (Rational(t.h * t.h) + qv), w.str() + " L=" + L.key());
      }
    }
  }
}

inline void suite_nonempty(const VerifyParams &p, VerifyReport &r) {
  struct Case {
    std::size_t n, k;
    long long dmax;
  };
  long long scale = p.dmax;
  std::vector<Case> cases{{3, 1, scale ? scale : 500}, {4, 1, scale ? scale : 200}, {4, 2, scale ? scale : 200},
                          {5, 2, scale ? std::min<long long>(scale, 100) : 40}};
  for (auto &c : cases) {
    QuadraticForm Q = QuadraticForm::sum_of_squares(c.n);
    std::ostringstream name;
    name << "criterion matches enumeration for (" << c.n << "," << c.k << ")";
    auto &chk = r.check(name.str());
    for_each_discriminant(Q, c.k, 1, c.dmax, [&](long long D, const std::vector<Subspace> &H) {
      NonEmptiness v = nonempty_criterion(c.n, c.k, D);
      bool empty = H.empty();
      bool ok = v == NonEmptiness::Empty ? empty : !empty;
      chk.record(ok, "D=" + std::to_string(D) + " |H|=" + std::to_string(H.size()) + " criterion=" + to_string(v));
    });
  }
  // duality L -> L^perp on enumerated sets
  for (auto [n, k, dm] : {std::tuple<std::size_t, std::size_t, long long>{4, 1, 60}, {5, 2, 20}}) {
    QuadraticForm Q = QuadraticForm::sum_of_squares(n);
    auto a = enumerate_range(Q, k, 1, dm), b = enumerate_range(Q, n - k, 1, dm);
    for (long long D = 1; D <= dm; ++D) {
      std::set<Subspace> perp;
      for (auto &L : a[D]) perp.insert(orth_complement(Q, L));
      r.check("L -> L^perp is a bijection of enumerated sets")
          .record(perp == std::set<Subspace>(b[D].begin(), b[D].end()), "n=" + std::to_string(n) + " D=" + std::to_string(D));
    }
  }
}

inline void suite_isotropy(const VerifyParams &p, VerifyReport &r) {
  const std::vector<long long> entries{1, -1, 2, -2, 3, -3, 5, -5};
  auto &chk = r.check("classification agrees with the Hensel oracle");
  for (std::size_t m = 2; m <= 4; ++m) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<long long> d(m);
      for (std::size_t i = 0; i < m; ++i) d[i] = entries[idx[i]];
      IntMatrix G(m, m);
      for (std::size_t i = 0; i < m; ++i) G(i, i) = d[i];
      for (long pl : {2L, 3L, 5L, 7L}) {
        std::ostringstream w;
        w << "p=" << pl << " diag=" << to_json(std::vector<Integer>(d.begin(), d.end())).dump();
        chk.record(is_isotropic_local(G, pl) == hensel_isotropic(d, pl), w.str());
      }
      std::size_t i = 0;
      while (i < m && ++idx[i] == entries.size()) idx[i++] = 0;
      if (i == m) break;
    }
  }
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<long long> u(-60, 60);
  auto rnd = [&] {
    long long a = 0, b = 0;
    while (a == 0) a = u(rng);
    while (b == 0) b = u(rng);
    return Rational(a) / Rational(b);
  };
  const std::vector<long> places{kInfinity, 2, 3, 5, 7, 11, 13};
  for (std::size_t s = 0; s < std::max<std::size_t>(p.samples, 200); ++s) {
    Rational a = rnd(), b = rnd(), c = rnd(), t = rnd();
    for (long v : places) {
      std::string w = "a=" + to_string(a) + " b=" + to_string(b) + " place=" + std::to_string(v);
      r.check("Hilbert symbol symmetric").record(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v), w);
      r.check("Hilbert symbol bimultiplicative").record(hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v), w);
      r.check("(a, -a) = 1").record(hilbert_symbol(a, -a, v) == 1, w);
      r.check("Hilbert symbol sees square classes").record(hilbert_symbol(a * t * t, b, v) == hilbert_symbol(a, b, v), w);
    }
  }
  // Hasse invariant under rational congruence
  std::uniform_int_distribution<int> e(-3, 3);
  for (std::size_t s = 0; s < std::max<std::size_t>(p.samples / 2, 50); ++s) {
    std::size_t m = 2 + s % 3;
    IntMatrix G(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) G(i, j) = G(j, i) = e(rng);
    if (det(G) == 0) continue;
    RatMatrix T(m, m);
    do {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) T(i, j) = Rational(e(rng), 1 + std::abs(e(rng)));
    } while (det(T) == 0);
    RatMatrix H = T.transpose() * to_rational(G) * T;
    for (long v : places)
      r.check("Hasse invariant is a congruence invariant")
          .record(hasse_invariant(diagonalize(to_rational(G)), v) == hasse_invariant(diagonalize(H), v), "G=" + to_json(G).dump());
  }
}

inline void suite_reciprocity(const VerifyParams &p, VerifyReport &r) {
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<long long> u(-100000, 100000);
  auto rnd = [&] {
    long long a = 0, b = 0;
    while (a == 0) a = u(rng);
    while (b == 0) b = u(rng) % 1000;
    return Rational(a) / Rational(b);
  };
  std::size_t count = std::max<std::size_t>(p.samples, 1000);
  for (std::size_t s = 0; s < count; ++s) {
    Rational a = rnd(), b = rnd();
    r.check("product of Hilbert symbols over all places is 1").record(hilbert_product(a, b) == 1, to_string(a) + ", " + to_string(b));
  }
}

inline void suite_moduli(const VerifyParams &p, VerifyReport &r) {
  std::mt19937_64 rng(p.seed);
  std::vector<std::pair<QuadraticForm, std::size_t>> setups;
  if (p.forms.empty()) {
    setups = {{QuadraticForm::sum_of_squares(5), 2}, {QuadraticForm::sum_of_squares(6), 3}};
  } else {
    for (auto &Q : p.forms)
      if (Q.dim() >= 2) setups.push_back({Q, Q.dim() / 2});
  }
  for (std::size_t s = 0; s < p.samples; ++s) {
    auto &[Q, k] = setups[s % setups.size()];
    Subspace L = random_subspace(Q.dim(), rng, k);
    std::string w = describe(Q, L);
    ModuliPoint mp = moduli_point(Q, L);
    ModuliCheck c = shapes_from_moduli(Q, L, mp);
    r.check("rho is Q-orthogonal").record(c.orth_residual < 1e-9, w);
    r.check("m_L block triangular with unit determinants").record(c.block_residual < 1e-9 && c.det_residual < 1e-10, w);
    r.check("shape of L(Z) from the moduli point").record(c.shape_L_residual < 1e-9, w);
    r.check("shape of L^perp(Z) from the moduli point").record(c.shape_Lperp_residual < 1e-9, w);
    r.check("dual columns span L^perp(Z)").record(c.lperp_basis_exact, w);
    Mat P = grassmann_coordinates(Q, L);
    Mat Minv = to_eigen(Q.gram()).inverse();
    Mat PM = P * Minv;
    r.check("Grassmann coordinates form a Q-orthogonal projection")
        .record(detail::max_abs(P * P - P) < 1e-10 && std::abs(P.trace() - static_cast<double>(k)) < 1e-10 &&
                    detail::max_abs(PM - PM.transpose()) < 1e-10,
                w);
  }
}

// Cayley transform (M + A)^{-1} (M - A) of an antisymmetric A: a rational rotation for M
inline RatMatrix cayley_rotation(const QuadraticForm &Q, const RatMatrix &A) {
  RatMatrix M = Q.rgram();
  return inverse(M + A) * (M - A);
}

inline void suite_continuity(const VerifyParams &p, VerifyReport &r) {
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<int> u(-2, 2);
  auto forms = forms_of(p);
  for (std::size_t s = 0; s < p.samples; ++s) {
    const QuadraticForm &Q = forms[s % forms.size()];
    std::size_t n = Q.dim();
    RatMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        A(i, j) = Rational(u(rng));
        A(j, i) = -A(i, j);
      }
    RatMatrix g = cayley_rotation(Q, A);
    Subspace L = random_subspace(n, rng);
    std::string w = describe(Q, L) + " g=" + to_json(g).dump();
    if (!is_Q_orthogonal(Q, g) || det(g) != 1) {
      r.check("Cayley transform is a rotation").record(false, w);
      continue;
    }
    Subspace gL = rotate_subspace(Q, g, L);
    Integer d0 = disc(Q, L), d1 = disc(Q, gL);
    bool ok = true;
    for (auto &q : prime_factors(d0 * d1 * common_denominator(g) * common_denominator(inverse(g)))) {
      int diff = std::abs(valuation(d1, q) - valuation(d0, q));
      ok = ok && diff <= 2 * static_cast<int>(L.dim()) * ord_p(g, q);
    }
    r.check("|ord_p disc(gL) - ord_p disc(L)| <= 2k ord_p(g)").record(ok, w);
  }
}

} // namespace detail

inline VerifyReport verify(const std::string &suite, const VerifyParams &p = {}) {
  VerifyReport r{suite, {}};
  if (suite == "glue") detail::suite_glue(p, r);
  else if (suite == "duality") detail::suite_duality(p, r);
  else if (suite == "indices") detail::suite_indices(p, r);
  else if (suite == "orders") detail::suite_orders(p, r);
  else if (suite == "primitive") detail::suite_primitive(p, r);
  else if (suite == "lambda") detail::suite_lambda(p, r);
  else if (suite == "schmidt") detail::suite_schmidt(p, r);
  else if (suite == "nonempty") detail::suite_nonempty(p, r);
  else if (suite == "isotropy") detail::suite_isotropy(p, r);
  else if (suite == "reciprocity") detail::suite_reciprocity(p, r);
  else if (suite == "moduli") detail::suite_moduli(p, r);
  else if (suite == "continuity") detail::suite_continuity(p, r);
  else throw std::invalid_argument("unknown suite: " + suite);
  return r;
}

} // namespace latshape
