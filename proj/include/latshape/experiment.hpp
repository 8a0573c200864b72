#pragma once

#include "latshape/grassenum.hpp"
#include "latshape/isometry.hpp"
#include "latshape/moduli.hpp"
#include "latshape/shapes.hpp"
#include "latshape/stats.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace latshape {

enum class ExperimentKind { Grassmann, ShapeL, ShapeLperp, Joint };
enum class Weighting { Plain, Stabilizer };

inline ExperimentKind parse_kind(const std::string &s) {
  if (s == "grassmann") return ExperimentKind::Grassmann;
  if (s == "shape_L") return ExperimentKind::ShapeL;
  if (s == "shape_Lperp") return ExperimentKind::ShapeLperp;
  if (s == "joint") return ExperimentKind::Joint;
  throw MathError("unknown experiment kind: " + s);
}

inline Weighting parse_weighting(const std::string &s) {
  if (s == "plain") return Weighting::Plain;
  if (s == "stabilizer") return Weighting::Stabilizer;
  throw MathError("unknown weighting: " + s);
}

struct ExperimentConfig {
  QuadraticForm Q = QuadraticForm::sum_of_squares(3);
  std::size_t k = 1;
  std::vector<long long> dlist;
  ExperimentKind kind = ExperimentKind::Joint;
  Weighting weighting = Weighting::Plain;
  std::string out_path; // empty: no CSV
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::size_t mc_samples = 2000;
};

struct RecordRow {
  long long D = 0;
  std::string key;
  std::vector<double> grassmann;
  std::optional<UpperHalfPoint> shape_L, shape_Lperp;
  Integer disc_prim_L, disc_prim_Lperp;
  std::size_t stabilizer = 1;
};

struct DiscSummary {
  long long D = 0;
  std::size_t count = 0;
  NonEmptiness criterion = NonEmptiness::NoClosedForm;
  bool criterion_consistent = true;
  std::optional<double> ks_sphere, ks_shape_L, ks_shape_Lperp, ks_grassmann;
};

struct ExperimentResult {
  std::vector<RecordRow> rows;
  std::vector<DiscSummary> summary;
};

namespace detail {

inline bool wants(ExperimentKind have, ExperimentKind want) { return have == ExperimentKind::Joint || have == want; }

inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// real coordinates of a uniformly random k-plane (Q-orthogonal invariance), as its projection matrix
inline Mat random_projection(const Mat &M, const Mat &Rinv, std::size_t k, std::mt19937_64 &rng) {
  std::size_t n = static_cast<std::size_t>(M.rows());
  std::normal_distribution<double> nd;
  Mat Z(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) Z(i, j) = nd(rng);
  Mat B = Rinv * Z; // Gaussian for the inner product M
  Mat G = B.transpose() * M * B;
  return B * G.inverse() * B.transpose() * M;
}

inline std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ks against a reference with optional weights; samples paired with weights are sorted together
inline double weighted_ks(std::vector<std::pair<double, double>> sw, const Cdf &cdf, bool weighted) {
  std::sort(sw.begin(), sw.end());
  std::vector<double> s, w;
  for (auto &[x, y] : sw) {
    s.push_back(x);
    w.push_back(y);
  }
  return weighted ? ks_statistic(s, cdf, w) : ks_statistic(s, cdf);
}

struct DiscWork {
  std::vector<RecordRow> rows;
  DiscSummary summary;
};

inline DiscWork run_one(const ExperimentConfig &cfg, const OrthogonalGroup *group, long long D) {
  const QuadraticForm &Q = cfg.Q;
  std::size_t n = Q.dim(), k = cfg.k;
  DiscWork w;
  w.summary.D = D;
  std::vector<Subspace> H = enumerate_subspaces(Q, k, D);
  w.summary.count = H.size();
  w.summary.criterion = Q.gram() == IntMatrix::identity(n) ? nonempty_criterion(n, k, D) : NonEmptiness::NoClosedForm;
  if (w.summary.criterion == NonEmptiness::Empty) w.summary.criterion_consistent = H.empty();
  if (w.summary.criterion == NonEmptiness::NonEmpty || w.summary.criterion == NonEmptiness::AlwaysNonEmpty)
    w.summary.criterion_consistent = !H.empty();

  Mat M = to_eigen(Q.gram());
  Mat R = Eigen::LLT<Mat>(M).matrixL().transpose();
  for (auto &L : H) {
    RecordRow r;
    r.D = D;
    r.key = L.key();
    Mat P = grassmann_coordinates(Q, L);
    for (Eigen::Index i = 0; i < P.rows(); ++i)
      for (Eigen::Index j = 0; j < P.cols(); ++j) r.grassmann.push_back(P(i, j));
    Subspace Lp = orth_complement(Q, L);
    if (k == 2) r.shape_L = upper_half_point(gram(Q, L));
    if (n - k == 2) r.shape_Lperp = upper_half_point(gram(Q, Lp));
    r.disc_prim_L = primitive_disc(Q, L);
    r.disc_prim_Lperp = primitive_disc(Q, Lp);
    r.stabilizer = group ? group->stabilizer_order(L) : 1;
    w.rows.push_back(std::move(r));
  }
  if (H.empty()) return w;

  bool weighted = cfg.weighting == Weighting::Stabilizer;
  auto weight = [&](const RecordRow &r) { return 1.0 / static_cast<double>(r.stabilizer); };

  if (n == 3 && k == 1 && wants(cfg.kind, ExperimentKind::Grassmann)) {
    // last coordinate of the unit vector in orthonormal coordinates; both signs of the line
    std::vector<std::pair<double, double>> sw;
    double sd = std::sqrt(static_cast<double>(D));
    for (std::size_t i = 0; i < H.size(); ++i) {
      Eigen::VectorXd v = to_eigen(H[i].basis()).transpose();
      double z = (R * v)(n - 1) / sd;
      sw.emplace_back(z, weight(w.rows[i]));
      sw.emplace_back(-z, weight(w.rows[i]));
    }
    w.summary.ks_sphere = weighted_ks(sw, [](double x) { return uniform_cdf(x, -1, 1); }, weighted);
  }
  auto shape_ks = [&](bool of_L) {
    std::vector<std::pair<double, double>> sw;
    for (auto &r : w.rows) sw.emplace_back((of_L ? r.shape_L : r.shape_Lperp)->y, weight(r));
    return weighted_ks(sw, hyperbolic_y_cdf, weighted);
  };
  if (k == 2 && wants(cfg.kind, ExperimentKind::ShapeL)) w.summary.ks_shape_L = shape_ks(true);
  if (n - k == 2 && wants(cfg.kind, ExperimentKind::ShapeLperp)) w.summary.ks_shape_Lperp = shape_ks(false);
  if (wants(cfg.kind, ExperimentKind::Grassmann)) {
    std::mt19937_64 rng(cfg.seed ^ (static_cast<std::uint64_t>(D) * 0x9E3779B97F4A7C15ULL));
    Mat Rinv = R.inverse();
    std::vector<double> ref, emp;
    for (std::size_t s = 0; s < cfg.mc_samples; ++s) {
      Mat P = random_projection(M, Rinv, k, rng);
      for (Eigen::Index i = 0; i < P.size(); ++i) ref.push_back(P.data()[i]);
    }
    for (auto &r : w.rows) emp.insert(emp.end(), r.grassmann.begin(), r.grassmann.end());
    w.summary.ks_grassmann = ks_two_sample(std::move(emp), std::move(ref));
  }
  return w;
}

} // namespace detail

inline std::string csv_header(std::size_t n) {
  std::ostringstream os;
  os << "D,key";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) os << ",P_" << i << "_" << j;
  os << ",L_x,L_y,Lperp_x,Lperp_y,disc_prim_L,disc_prim_Lperp,stabilizer";
  return os.str();
}

inline std::string csv_row(const RecordRow &r) {
  std::ostringstream os;
  os << r.D << ",\"" << r.key << "\"";
  for (double x : r.grassmann) os << "," << detail::fmt12(x);
  auto point = [&](const std::optional<UpperHalfPoint> &p) {
    if (p) os << "," << detail::fmt12(p->x) << "," << detail::fmt12(p->y);
    else os << ",,";
  };
  point(r.shape_L);
  point(r.shape_Lperp);
  os << "," << r.disc_prim_L << "," << r.disc_prim_Lperp << "," << r.stabilizer;
  return os.str();
}

inline ExperimentResult run_experiment(const ExperimentConfig &cfg) {
  if (cfg.dlist.empty()) throw MathError("experiment: empty discriminant list");
  if (cfg.k == 0 || cfg.k >= cfg.Q.dim()) throw MathError("experiment: need 0 < k < n");
  std::optional<OrthogonalGroup> group;
  group.emplace(cfg.Q);
  std::vector<detail::DiscWork> work(cfg.dlist.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfg.dlist.size());
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cfg.dlist.size();) {
      try {
        work[i] = detail::run_one(cfg, &*group, cfg.dlist[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned t = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.dlist.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentResult res;
  for (auto &w : work) {
    res.rows.insert(res.rows.end(), w.rows.begin(), w.rows.end());
    res.summary.push_back(w.summary);
  }
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) throw MathError("experiment: cannot open " + cfg.out_path);
    f << csv_header(cfg.Q.dim()) << "\n";
    for (auto &r : res.rows) f << csv_row(r) << "\n";
  }
  return res;
}

} // namespace latshape
