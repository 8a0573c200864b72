#include "latshape/experiment.hpp"
#include "latshape/io.hpp"
#include "latshape/verify.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace latshape;

namespace {

// (3/pi) * integral of w(y) / y^2 with w the width of the fundamental domain at height y
double hyperbolic_cdf_by_quadrature(double t) {
  const double y0 = std::sqrt(3.0) / 2;
  if (t <= y0) return 0;
  auto f = [](double y) {
    double w = y >= 1 ? 1.0 : 1.0 - 2.0 * std::sqrt(1.0 - y * y);
    return w / (y * y);
  };
  auto simpson = [&](double a, double b, int m) {
    double h = (b - a) / m, s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
  };
  double total = simpson(y0, std::min(t, 1.0), 20000);
  if (t > 1) total += simpson(1.0, t, 20000);
  return 3 / std::numbers::pi * total;
}

std::size_t count_lines(const std::string &path) {
  std::ifstream f(path);
  std::size_t c = 0;
  for (std::string s; std::getline(f, s);) ++c;
  return c;
}

} // namespace

TEST(Ks, SmallExamples) {
  EXPECT_DOUBLE_EQ(ks_statistic({0.5}, [](double x) { return uniform_cdf(x, 0, 1); }), 0.5);
  EXPECT_NEAR(ks_statistic({0.1, 0.2, 0.3}, [](double x) { return uniform_cdf(x, 0, 1); }), 0.7, 1e-12);
  EXPECT_THROW(ks_statistic({}, [](double) { return 0.0; }), MathError);
  EXPECT_THROW(ks_statistic({0.3, 0.1}, [](double) { return 0.0; }), MathError);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2}, {3, 4}), 1);
}

TEST(Ks, QuantilesAreCloseAndWeightsNormalize) {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back((i + 0.5) / 1000);
  auto u = [](double x) { return uniform_cdf(x, 0, 1); };
  EXPECT_LE(ks_statistic(xs, u), 0.5 / 1000 + 1e-12);
  std::vector<double> w(xs.size(), 3.0);
  EXPECT_NEAR(ks_statistic(xs, u, w), ks_statistic(xs, u), 1e-12);
}

TEST(Ks, HyperbolicCdfMatchesQuadrature) {
  for (double t : {0.87, 0.9, 0.95, 0.99, 1.0, 1.2, 2.0, 5.0, 40.0})
    EXPECT_NEAR(hyperbolic_y_cdf(t), hyperbolic_cdf_by_quadrature(t), 1e-7) << t;
  EXPECT_EQ(hyperbolic_y_cdf(0.5), 0);
  EXPECT_LT(hyperbolic_y_cdf(1e6), 1);
}

TEST(Experiment, DeterministicAndCsvRowsMatchCounts) {
  auto tmp = (std::filesystem::temp_directory_path() / "latshape_test_exp.csv").string();
  ExperimentConfig cfg;
  cfg.Q = QuadraticForm::sum_of_squares(3);
  cfg.k = 1;
  cfg.dlist = {5, 6, 7, 21, 29};
  cfg.out_path = tmp;
  cfg.mc_samples = 300;
  cfg.seed = 9;
  ExperimentResult a = run_experiment(cfg);
  std::size_t total = 0;
  for (auto &s : a.summary) total += s.count;
  EXPECT_EQ(count_lines(tmp), total + 1);
  EXPECT_EQ(a.rows.size(), total);
  cfg.threads = 3;
  ExperimentResult b = run_experiment(cfg);
  ASSERT_EQ(a.summary.size(), b.summary.size());
  for (std::size_t i = 0; i < a.summary.size(); ++i) {
    EXPECT_EQ(a.summary[i].count, b.summary[i].count);
    EXPECT_EQ(a.summary[i].ks_grassmann, b.summary[i].ks_grassmann);
    EXPECT_EQ(a.summary[i].ks_sphere, b.summary[i].ks_sphere);
  }
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(csv_row(a.rows[i]), csv_row(b.rows[i]));
  std::remove(tmp.c_str());
}

TEST(Experiment, EmptyDiscriminantIsFlaggedConsistently) {
  ExperimentConfig cfg;
  cfg.k = 1;
  cfg.dlist = {7, 28};
  cfg.mc_samples = 50;
  ExperimentResult r = run_experiment(cfg);
  for (auto &s : r.summary) {
    EXPECT_EQ(s.count, 0u);
    EXPECT_EQ(s.criterion, NonEmptiness::Empty);
    EXPECT_TRUE(s.criterion_consistent);
    EXPECT_FALSE(s.ks_sphere.has_value());
  }
}

TEST(Experiment, JointRunFillsBothShapeColumns) {
  ExperimentConfig cfg;
  cfg.Q = QuadraticForm::sum_of_squares(4);
  cfg.k = 2;
  cfg.dlist = {13};
  cfg.mc_samples = 100;
  ExperimentResult r = run_experiment(cfg);
  ASSERT_FALSE(r.rows.empty());
  for (auto &row : r.rows) {
    EXPECT_TRUE(row.shape_L.has_value());
    EXPECT_TRUE(row.shape_Lperp.has_value());
    EXPECT_EQ(row.grassmann.size(), 16u);
  }
  EXPECT_TRUE(r.summary[0].ks_shape_L.has_value());
  EXPECT_TRUE(r.summary[0].ks_shape_Lperp.has_value());
  EXPECT_EQ(csv_header(4).substr(0, 6), "D,key,");
}

TEST(Experiment, StabilizerWeightingWithEqualStabilizersIsPlain) {
  // for a generic form every stabilizer is trivial
  ExperimentConfig cfg;
  cfg.Q = QuadraticForm(IntMatrix{{3, 1, 1}, {1, 5, 2}, {1, 2, 7}});
  cfg.k = 1;
  cfg.dlist = {3, 5, 7, 12};
  cfg.kind = ExperimentKind::Grassmann;
  cfg.mc_samples = 200;
  ExperimentResult a = run_experiment(cfg);
  cfg.weighting = Weighting::Stabilizer;
  ExperimentResult b = run_experiment(cfg);
  for (auto &row : b.rows) EXPECT_EQ(row.stabilizer, 1u);
  for (std::size_t i = 0; i < a.summary.size(); ++i) EXPECT_EQ(a.summary[i].ks_grassmann, b.summary[i].ks_grassmann);
}

TEST(Experiment, BadConfigurations) {
  ExperimentConfig cfg;
  EXPECT_THROW(run_experiment(cfg), MathError);
  cfg.dlist = {5};
  cfg.k = 3;
  EXPECT_THROW(run_experiment(cfg), MathError);
  EXPECT_THROW(parse_kind("shape"), MathError);
  EXPECT_THROW(parse_weighting("heavy"), MathError);
  EXPECT_EQ(parse_kind("shape_Lperp"), ExperimentKind::ShapeLperp);
}

TEST(Io, RoundTrips) {
  QuadraticForm Q(IntMatrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  EXPECT_EQ(form_from_json(to_json(Q)).gram(), Q.gram());
  Subspace L = Subspace::span({{1, 2, 0}, {0, 3, 3}});
  EXPECT_EQ(subspace_from_json(to_json(L), 3), L);
  EXPECT_EQ(parse_subspace_arg("[[2,4,0]]", 3), Subspace::span({{1, 2, 0}}));
  EXPECT_EQ(parse_subspace_arg("{\"basis\": [[0,0,5]]}", 3), Subspace::span({{0, 0, 1}}));
  EXPECT_EQ(to_json(Rational(-3) / 6).get<std::string>(), "-1/2");
  Integer big = Integer(1) << 80;
  EXPECT_EQ(integer_from_json(to_json(big)), big);
  EXPECT_EQ(parse_form_spec("sumsq:4").gram(), IntMatrix::identity(4));
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(parse_form_spec("sumsq:0"), MathError);
  EXPECT_THROW(parse_form_spec("sumsq:3x"), MathError);
  EXPECT_THROW(parse_form_spec("identity"), MathError);
  EXPECT_THROW(parse_form_spec("file:/nonexistent/q.json"), MathError);
  EXPECT_THROW(int_matrix_from_json(Json::parse("[[1,2],[3]]")), MathError);
  EXPECT_THROW(parse_subspace_arg("[[1,2]]", 3), MathError);
  EXPECT_THROW(form_from_json(Json::parse("{\"gram\": [[1,2],[3,1]]}")), MathError);
}

TEST(Verify, SuitesRunAndUnknownSuiteThrows) {
  EXPECT_THROW(verify("nonsense", VerifyParams{}), std::invalid_argument);
  VerifyParams p;
  p.samples = 20;
  p.seed = 3;
  for (const char *s : {"glue", "duality", "primitive", "reciprocity"}) {
    VerifyReport r = verify(s, p);
    EXPECT_TRUE(r.ok()) << s;
    EXPECT_FALSE(r.checks.empty()) << s;
  }
}
