// latshape: command-line front end for the lattice/subspace library.
#include "latshape/experiment.hpp"
#include "latshape/io.hpp"
#include "latshape/localarith.hpp"
#include "latshape/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace latshape;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed --Q or --subspace values are usage errors, not computational ones
QuadraticForm form_arg(const std::string &spec) {
  try {
    return parse_form_spec(spec);
  } catch (const MathError &e) {
    throw UsageError(e.what());
  }
}

Subspace subspace_arg(const std::string &arg, std::size_t n) {
  try {
    return parse_subspace_arg(arg, n);
  } catch (const MathError &e) {
    throw UsageError(e.what());
  }
}

Json point_json(const UpperHalfPoint &z) { return {{"x", z.x}, {"y", z.y}}; }

Json shape_json(const QuadraticForm &Q, const Subspace &L) {
  ShapeClass s = shape(Q, L);
  Json j{{"canonical", to_json(s.canonical)}, {"scale", to_json(s.scale)}};
  if (L.dim() == 2) j["uhp"] = point_json(upper_half_point(gram(Q, L)));
  return j;
}

Json local_json(const LocalDisc &d) {
  return {{"valuation", d.valuation}, {"unit_class", d.unit_class.unit}};
}

int cmd_enumerate(const std::string &qspec, std::size_t k, long long D, const std::string &method, const std::string &format) {
  QuadraticForm Q = form_arg(qspec);
  if (k == 0 || k >= Q.dim()) throw UsageError("need 0 < k < n");
  if (D < 1) throw UsageError("--disc must be positive");
  std::vector<Subspace> H;
  if (method == "schmidt") {
    if (Q.gram() != IntMatrix::identity(Q.dim())) throw UsageError("--method schmidt needs a sum of squares form");
    H = schmidt_enumerate(Q.dim(), k, D);
  } else {
    H = enumerate_subspaces(Q, k, D);
  }
  std::sort(H.begin(), H.end());
  if (format == "csv") {
    std::cout << "D,key\n";
    for (auto &L : H) std::cout << D << ",\"" << L.key() << "\"\n";
    return 0;
  }
  Json out{{"n", Q.dim()}, {"k", k}, {"disc", D}, {"count", H.size()}, {"subspaces", Json::array()}};
  if (Q.gram() == IntMatrix::identity(Q.dim())) out["criterion"] = to_string(nonempty_criterion(Q.dim(), k, D));
  for (auto &L : H) out["subspaces"].push_back({{"key", L.key()}, {"basis", to_json(L.basis())}});
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_invariants(const std::string &qspec, const std::string &sub) {
  QuadraticForm Q = form_arg(qspec);
  Subspace L = subspace_arg(sub, Q.dim());
  if (L.dim() == 0 || L.dim() == Q.dim()) throw UsageError("subspace must be proper and nonzero");
  Subspace P = orth_complement(Q, L);
  Integer dQ = det(Q.gram()), dL = disc(Q, L), dP = disc(Q, P);
  RestrictedForms rf = restricted_forms(Q, L);
  ContentSplit cL = content_and_primitive(gram(Q, L)), cP = content_and_primitive(gram(Q, P));
  LambdaLattice lam = lambda_L(Q, L);

  Json out;
  out["disc_Q"] = to_json(dQ);
  out["L"] = {{"basis", to_json(L.basis())}, {"disc", to_json(dL)}, {"glue", to_json(glue_group(Q, L).invariants)},
              {"index", to_json(index_iL(Q, L))}, {"gcd", to_json(cL.content)}, {"primitive_disc", to_json(primitive_disc(Q, L))},
              {"gram", to_json(rf.q_L.gram)}};
  out["Lperp"] = {{"basis", to_json(P.basis())}, {"disc", to_json(dP)}, {"glue", to_json(glue_group(Q, P).invariants)},
                  {"index", to_json(index_iL(Q, P))}, {"gcd", to_json(cP.content)}, {"primitive_disc", to_json(primitive_disc(Q, P))},
                  {"gram", to_json(rf.q_Lperp.gram)}, {"tau_gram", to_json(rf.tau_Lperp.gram)}};
  Json local = Json::object();
  for (auto &p : prime_factors(dQ * dL * dP)) {
    local[to_string(p)] = {{"L", local_json(local_disc(Q, L, p))}, {"Lperp", local_json(local_disc(Q, P, p))}};
  }
  out["local"] = local;
  out["lambda"] = {{"basis", to_json(lam.basis)}, {"contains_integer_lattice", lam.contains_integer_lattice}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::vector<long> parse_primes(const std::vector<long> &given) {
  if (!given.empty()) return given;
  return {3, 5, 7, 11, 13};
}

int cmd_isotropy(const std::string &qspec, const std::string &sub, const std::vector<long> &primes_arg) {
  QuadraticForm Q = form_arg(qspec);
  Subspace L = subspace_arg(sub, Q.dim());
  std::size_t n = Q.dim(), k = L.dim();
  if (k == 0 || k == n) throw UsageError("subspace must be proper and nonzero");
  Subspace P = orth_complement(Q, L);
  Integer dL = disc(Q, L), dP = disc(Q, P);
  AmbientDiagonal amb = ambient_diagonal(Q);
  Json rows = Json::array();
  for (long p : parse_primes(primes_arg)) {
    if (p < 3 || !is_prime(Integer(p))) throw UsageError("--primes takes odd primes");
    Json r{{"p", p}, {"strongly_isotropic", stabilizer_strongly_isotropic(Q, L, p, amb)}};
    r["sufficient_criterion"] = sufficient_criterion(static_cast<long>(k), static_cast<long>(n - k), p, dL, dP);
    r["L_isotropic"] = is_isotropic_local(gram(Q, L), p);
    r["Lperp_isotropic"] = is_isotropic_local(gram(Q, P), p);
    rows.push_back(r);
  }
  std::cout << Json{{"disc_L", to_json(dL)}, {"disc_Lperp", to_json(dP)}, {"places", rows}}.dump(2) << "\n";
  return 0;
}

int cmd_shapes(const std::string &qspec, const std::string &sub, bool moduli_check, double tol) {
  QuadraticForm Q = form_arg(qspec);
  Subspace L = subspace_arg(sub, Q.dim());
  if (L.dim() == 0 || L.dim() == Q.dim()) throw UsageError("subspace must be proper and nonzero");
  Subspace P = orth_complement(Q, L);
  Json out{{"shape_L", shape_json(Q, L)}, {"shape_Lperp", shape_json(Q, P)}};
  int status = 0;
  if (moduli_check) {
    ModuliPoint mp = moduli_point(Q, L);
    ModuliCheck c = shapes_from_moduli(Q, L, mp);
    out["residuals"] = {{"block", c.block_residual}, {"det", c.det_residual}, {"orth", c.orth_residual},
                        {"shape_L", c.shape_L_residual}, {"shape_Lperp", c.shape_Lperp_residual},
                        {"lperp_basis_exact", c.lperp_basis_exact}, {"lambda_contains_integers", mp.lambda_contains_integers}};
    out["alpha"] = mp.alpha;
    bool ok = c.max_residual() < tol && c.lperp_basis_exact;
    out["moduli_ok"] = ok;
    if (!ok) status = kExitFailure;
  }
  std::cout << out.dump(2) << "\n";
  return status;
}

Json optional_json(const std::optional<double> &x) { return x ? Json(*x) : Json(nullptr); }

int cmd_experiment(ExperimentConfig cfg, const std::string &qspec, std::size_t n, const std::string &kind, const std::string &weighting) {
  if (!qspec.empty()) cfg.Q = form_arg(qspec);
  else if (n > 0) cfg.Q = QuadraticForm::sum_of_squares(n);
  else throw UsageError("experiment needs --n or --Q");
  cfg.kind = parse_kind(kind);
  cfg.weighting = parse_weighting(weighting);
  if (cfg.k == 0 || cfg.k >= cfg.Q.dim()) throw UsageError("need 0 < k < n");
  for (long long D : cfg.dlist)
    if (D < 1) throw UsageError("discriminants must be positive");
  ExperimentResult res = run_experiment(cfg);
  Json out{{"n", cfg.Q.dim()}, {"k", cfg.k}, {"rows", res.rows.size()}, {"summary", Json::array()}};
  if (!cfg.out_path.empty()) out["csv"] = cfg.out_path;
  bool consistent = true;
  for (auto &s : res.summary) {
    consistent = consistent && s.criterion_consistent;
    out["summary"].push_back({{"D", s.D}, {"count", s.count}, {"criterion", to_string(s.criterion)},
                              {"criterion_consistent", s.criterion_consistent}, {"ks_sphere", optional_json(s.ks_sphere)},
                              {"ks_shape_L", optional_json(s.ks_shape_L)}, {"ks_shape_Lperp", optional_json(s.ks_shape_Lperp)},
                              {"ks_grassmann", optional_json(s.ks_grassmann)}});
  }
  std::cout << out.dump(2) << "\n";
  return consistent ? 0 : kExitFailure;
}

int cmd_verify(const std::vector<std::string> &suites, const std::vector<std::string> &qspecs, VerifyParams p) {
  for (auto &s : qspecs) p.forms.push_back(form_arg(s));
  std::vector<std::string> names = suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify_suites();
  Json out = Json::array();
  bool ok = true;
  for (auto &name : names) {
    VerifyReport r = verify(name, p);
    ok = ok && r.ok();
    out.push_back(r.to_json());
  }
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitFailure;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Integral subspaces of rational quadratic spaces: enumeration, invariants, shapes and experiments"};
  app.require_subcommand(1);

  std::string qspec = "sumsq:3", sub, method = "brute", format = "json";
  std::size_t k = 1;
  long long D = 1;

  auto *en = app.add_subcommand("enumerate", "List the subspaces of dimension k with a given discriminant");
  en->add_option("--Q", qspec, "Form: sumsq:N or file:<path> (JSON with a gram field)")->capture_default_str();
  en->add_option("--k", k, "Subspace dimension")->required();
  en->add_option("--disc", D, "Discriminant")->required();
  en->add_option("--method", method, "brute or schmidt (sums of squares only)")->check(CLI::IsMember({"brute", "schmidt"}))->capture_default_str();
  en->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto *inv = app.add_subcommand("invariants", "Discriminants, glue groups, indices, local data and the lattice Lambda_L of a subspace");
  inv->add_option("--Q", qspec, "Form: sumsq:N or file:<path>")->capture_default_str();
  inv->add_option("--subspace", sub, "Spanning rows as inline JSON, file:<path> or a path")->required();

  std::vector<long> primes;
  auto *iso = app.add_subcommand("isotropy", "Strong isotropy of the stabilizer and the sufficient criterion at odd primes");
  iso->add_option("--Q", qspec, "Form: sumsq:N or file:<path>")->capture_default_str();
  iso->add_option("--subspace", sub, "Spanning rows as inline JSON, file:<path> or a path")->required();
  iso->add_option("--primes", primes, "Odd primes (default 3,5,7,11,13)")->delimiter(',');

  bool moduli_check = false;
  double tol = 1e-9;
  auto *sh = app.add_subcommand("shapes", "Shapes of L(Z) and L^perp(Z), optionally cross-checked through the moduli point");
  sh->add_option("--Q", qspec, "Form: sumsq:N or file:<path>")->capture_default_str();
  sh->add_option("--subspace", sub, "Spanning rows as inline JSON, file:<path> or a path")->required();
  sh->add_flag("--moduli-check", moduli_check, "Compute the moduli point and report residuals");
  sh->add_option("--tol", tol, "Residual tolerance for --moduli-check")->capture_default_str();

  ExperimentConfig cfg;
  std::size_t n = 0;
  std::string eq, kind = "joint", weighting = "plain";
  auto *ex = app.add_subcommand("experiment", "Enumerate each discriminant and report distribution statistics");
  ex->add_option("--n", n, "Ambient dimension (sum of squares form)");
  ex->add_option("--Q", eq, "Form instead of --n: sumsq:N or file:<path>");
  ex->add_option("--k", cfg.k, "Subspace dimension")->required();
  ex->add_option("--dlist", cfg.dlist, "Comma separated discriminants")->delimiter(',')->required();
  ex->add_option("--out", cfg.out_path, "CSV output path");
  ex->add_option("--seed", cfg.seed, "Seed for Monte Carlo reference samples")->capture_default_str();
  ex->add_option("--kind", kind, "grassmann, shape_L, shape_Lperp or joint")
      ->check(CLI::IsMember({"grassmann", "shape_L", "shape_Lperp", "joint"}))
      ->capture_default_str();
  ex->add_option("--weighting", weighting, "plain or stabilizer")->check(CLI::IsMember({"plain", "stabilizer"}))->capture_default_str();
  ex->add_option("--threads", cfg.threads, "Worker threads (parallel over discriminants)")->capture_default_str();
  ex->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo reference size for the Grassmannian statistic")->capture_default_str();

  std::vector<std::string> suites, vq;
  VerifyParams vp;
  std::vector<std::string> suite_names = verify_suites();
  suite_names.push_back("all");
  auto *ve = app.add_subcommand("verify", "Run property suites and print a JSON report");
  ve->add_option("--suite", suites, "Suite names (repeatable) or all")->check(CLI::IsMember(suite_names));
  ve->add_option("--Q", vq, "Forms to test (repeatable); default is a built-in list");
  ve->add_option("--samples", vp.samples, "Random subspaces per suite")->capture_default_str();
  ve->add_option("--seed", vp.seed, "Random seed")->capture_default_str();
  ve->add_option("--dmax", vp.dmax, "Discriminant bound for enumeration suites (0: default)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*en) return cmd_enumerate(qspec, k, D, method, format);
    if (*inv) return cmd_invariants(qspec, sub);
    if (*iso) return cmd_isotropy(qspec, sub, primes);
    if (*sh) return cmd_shapes(qspec, sub, moduli_check, tol);
    if (*ex) return cmd_experiment(cfg, eq, n, kind, weighting);
    if (*ve) return cmd_verify(suites, vq, vp);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundExceeded &e) {
    std::cerr << "error: " << e.what() << " (raise LATSHAPE_MAX_CANDIDATES to allow more work)\n";
    return kExitFailure;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
