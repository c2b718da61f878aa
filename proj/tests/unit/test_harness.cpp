#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "simest/harness/config.hpp"
#include "simest/harness/density.hpp"
#include "simest/harness/figures.hpp"
#include "simest/harness/replication.hpp"
#include "simest/harness/tables.hpp"
#include "simest/models/normal_model.hpp"
#include "test_support.hpp"

using namespace simest;

namespace {

ExperimentConfig small_normal_config() {
  ExperimentConfig c;
  c.name = "unit";
  c.model = ModelKind::Normal;
  c.T = 10;
  c.sigma2 = 2.0;
  c.replications = 30;
  c.master_seed = 77;
  EstimatorSpec ml;
  ml.label = "ml";
  ml.kind = EstimatorKind::ML;
  EstimatorSpec md;
  md.label = "md";
  md.kind = EstimatorKind::MD;
  EstimatorSpec smd;
  smd.label = "smd";
  smd.kind = EstimatorKind::SMD;
  smd.S = 5;
  EstimatorSpec rs;
  rs.label = "rs";
  rs.kind = EstimatorKind::RS;
  rs.B = 50;
  c.estimators = {ml, md, smd, rs};
  return c;
}

ReplicationTable sample_table() {
  ReplicationTable t;
  t.replications = 200;
  t.rows.push_back({"mle", "rho", 0.6, 0.419125, 0.0371, 0.419125 - 0.6, 0.0371 / std::sqrt(200.0), 0, 1.0});
  t.rows.push_back({"mle", "sigma2", 2.0, 1.869, 0.29, -0.131, 0.29 / std::sqrt(200.0), 0, 1.0});
  t.rows.push_back({"smd", "rho", 0.6, 0.598, 0.035, -0.002, 0.035 / std::sqrt(200.0), 3, 2.0});
  t.rows.push_back({"smd", "sigma2", 2.0, 1.989, 0.3, -0.011, 0.3 / std::sqrt(200.0), 3, 2.0});
  return t;
}

WeightedDraws draws_from(const Vector& sigma2, const Vector& w) {
  const NormalModel model(10, 0.0, 1.0);
  Matrix d(sigma2.size(), 2);
  d.col(0).setZero();
  d.col(1) = sigma2;
  return WeightedDraws::from_raw(model.space(), d, w);
}

}  // namespace

TEST(Config, WriteParseRoundTrip) {
  ExperimentConfig c = small_normal_config();
  c.estimators[3].prior = PriorKind::Power;
  c.estimators[3].alpha = 2.5;
  c.estimators[3].weighting = WeightingKind::Identity;
  c.estimators[3].solver.restarts = 7;
  std::istringstream in(config_to_string(c));
  EXPECT_EQ(parse_config(in), c);

  ExperimentConfig p;
  p.model = ModelKind::Panel;
  p.panel.units = 40;
  p.panel.rho = 0.9;
  p.panel.effects = EffectsDistribution::Normal;
  p.condition_on_x = true;
  EstimatorSpec abc;
  abc.label = "abc";
  abc.kind = EstimatorKind::ABC;
  abc.delta = 0.125;
  p.estimators = {abc};
  std::istringstream pin(config_to_string(p));
  EXPECT_EQ(parse_config(pin), p);
}

TEST(Config, RejectsBadInput) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  EXPECT_ERROR_CODE(parse("name x\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind cubic }\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind normal }\nestimators { estimator { type md label a }\n"
                          "estimator { type ml label a } }\n"),
                    ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind normal }\nestimators { estimator { type abc } }\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind normal T 3 }\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind normal }\nreplications 0\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(parse("model { kind normal T ten }\n"), ErrorCode::ConfigError);
  EXPECT_ERROR_CODE(load_config("/nonexistent/x.cfg"), ErrorCode::IOFailure);
}

TEST(Config, ShippedExperimentsParse) {
  for (const char* name : {"table2", "table3", "table4"}) {
    const ExperimentConfig c = load_config(std::string(SIMEST_EXPERIMENTS_DIR) + "/" + name + ".cfg");
    EXPECT_EQ(c.name, name);
    EXPECT_FALSE(c.estimators.empty());
  }
  const Figure1Config f = load_figure1_config(std::string(SIMEST_EXPERIMENTS_DIR) + "/figure1.cfg");
  EXPECT_EQ(f.T, 10);
  EXPECT_EQ(f.B, 50000);
}

TEST(Figure1Config, ParseKeepsDefaults) {
  std::istringstream in("T 12\nB 300\nmaster_seed 9\n");
  const Figure1Config f = parse_figure1_config(in);
  EXPECT_EQ(f.T, 12);
  EXPECT_EQ(f.B, 300);
  EXPECT_EQ(f.grid_points, Figure1Config{}.grid_points);
  EXPECT_EQ(f.sigma2, 1.0);
  EXPECT_EQ(f.seed, (SeedSpec{9, 0}));
  std::istringstream bad("T x\n");
  EXPECT_ERROR_CODE(parse_figure1_config(bad), ErrorCode::ConfigError);
}

TEST(Tables, CsvRoundTrip) {
  const ReplicationTable t = sample_table();
  std::ostringstream out;
  emit_table(out, t, TableOptions{TableFormat::Csv, false, {"config table3", "seed 1"}});
  std::istringstream in(out.str());
  const ReplicationTable back = parse_table_csv(in);
  EXPECT_EQ(back, t);
  EXPECT_NEAR(back.rows[0].truth, 0.6, 1e-15);
}

TEST(Tables, MultiLineProvenanceStaysCommented) {
  const ExperimentConfig c = small_normal_config();
  std::ostringstream out;
  emit_table(out, sample_table(), TableOptions{TableFormat::Csv, false, {config_to_string(c)}});
  std::istringstream in(out.str());
  EXPECT_EQ(parse_table_csv(in), sample_table());
}

TEST(Tables, EmptyTableIsHeaderOnly) {
  ReplicationTable t;
  t.replications = 5;
  std::ostringstream out;
  emit_table(out, t);
  EXPECT_EQ(out.str(), "# replications=5\nEstimator,Param,Mean,SD,Bias,MC_SE,Failures\n");
  std::istringstream in(out.str());
  EXPECT_EQ(parse_table_csv(in), t);
  std::istringstream bad("nonsense\n");
  EXPECT_ERROR_CODE(parse_table_csv(bad), ErrorCode::IOFailure);
}

TEST(Tables, EstimatorColumnsGolden) {
  std::ostringstream out;
  emit_table(out, sample_table(), TableOptions{TableFormat::Markdown, true, {}});
  EXPECT_EQ(out.str(),
            "| | mle | smd |\n"
            "|---|---:|---:|\n"
            "| rho Mean | 0.419 | 0.598 |\n"
            "| rho SD | 0.037 | 0.035 |\n"
            "| rho Bias | -0.181 | -0.002 |\n"
            "| sigma2 Mean | 1.869 | 1.989 |\n"
            "| sigma2 SD | 0.290 | 0.300 |\n"
            "| sigma2 Bias | -0.131 | -0.011 |\n");
}

TEST(Tables, MarkdownCarriesProvenance) {
  std::ostringstream out;
  emit_table(out, sample_table(), TableOptions{TableFormat::Markdown, false, {"run 1"}});
  EXPECT_EQ(out.str().rfind("<!--\nrun 1\n-->\n", 0), 0u);
  EXPECT_NE(out.str().find("| smd | rho | 0.5980 | 0.0350 | -0.0020 |"), std::string::npos);
}

TEST(Density, PointMassWithBandwidthFloor) {
  const Vector x = Vector::Constant(200, 1.5);
  const WeightedDraws d = draws_from(x, Vector::Ones(200));
  const Vector grid = linear_grid(0.5, 2.5, 201);
  EXPECT_ERROR_CODE(weighted_kde(d, 1, grid), ErrorCode::InvalidArgument);
  const DensityGrid k = weighted_kde(d, 1, grid, "pm", 0.1);
  EXPECT_EQ(k.bandwidth, 0.1);
  for (Index g = 0; g < grid.size(); ++g) {
    const double z = (grid[g] - 1.5) / 0.1;
    EXPECT_NEAR(k.density[g], std::exp(-0.5 * z * z) / (0.1 * std::sqrt(2.0 * std::numbers::pi)), 1e-12);
  }
}

TEST(Density, StandardNormalSample) {
  testgen::Generator gen(5);
  const Index n = 100000;
  const WeightedDraws d = draws_from(gen.normals(n), Vector::Ones(n));
  const Vector grid = linear_grid(-5.0, 5.0, 201);
  const DensityGrid k = weighted_kde(d, 1, grid, "kde");
  const DensityGrid ref = tabulate_density(
      [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }, grid, "exact");
  EXPECT_LT(l1_distance(k, ref), 0.02);
  EXPECT_GT(k.integral(), 0.99);
  EXPECT_LT(k.integral(), 1.01);
}

TEST(Density, WeightsShiftTheEstimate) {
  // half the draws at 0 and half at 4; zero weights on the second half
  Vector x(400), w(400);
  for (Index i = 0; i < 400; ++i) {
    x[i] = (i < 200 ? 0.0 : 4.0) + 0.01 * static_cast<double>(i % 7);
    w[i] = i < 200 ? 1.0 : 0.0;
  }
  const Vector grid = linear_grid(-1.0, 5.0, 121);
  const DensityGrid k = weighted_kde(draws_from(x, w), 1, grid, "w", 0.05);
  EXPECT_NEAR(k.integral(), 1.0, 1e-3);
  EXPECT_LT(k.density[grid.size() - 21], 1e-12);
}

TEST(Density, Errors) {
  Vector w = Vector::Zero(500);
  w.head(50).setOnes();
  testgen::Generator gen(6);
  EXPECT_ERROR_CODE(weighted_kde(draws_from(gen.normals(500), w), 1, linear_grid(-1, 1, 11)),
                    ErrorCode::TooFewEffectiveDraws);
  EXPECT_ERROR_CODE(linear_grid(1.0, 1.0, 10), ErrorCode::InvalidArgument);
  const DensityGrid a{linear_grid(0, 1, 5), Vector::Zero(5), 0.0, "a"};
  const DensityGrid b{linear_grid(0, 2, 5), Vector::Zero(5), 0.0, "b"};
  EXPECT_ERROR_CODE(l1_distance(a, b), ErrorCode::GridMismatch);
}

TEST(FigureData, LongFormatAndMismatch) {
  const Vector grid = linear_grid(0, 1, 4);
  const DensityGrid a{grid, Vector::Constant(4, 1.0), 0.0, "a"};
  const DensityGrid b{grid, Vector::Constant(4, 2.0), 0.0, "b"};
  std::ostringstream out;
  emit_figure_data(out, {a, b}, {"seed 3"});
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "# seed 3");
  std::getline(in, line);
  EXPECT_EQ(line, "label,x,density");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 8);
  const DensityGrid c{linear_grid(0, 2, 4), Vector::Zero(4), 0.0, "c"};
  std::ostringstream sink;
  EXPECT_ERROR_CODE(emit_figure_data(sink, {a, c}), ErrorCode::GridMismatch);
  EXPECT_ERROR_CODE(emit_figure_data("/nonexistent/dir/f.csv", {a}), ErrorCode::IOFailure);
}

TEST(Figure1, SmallRunHasThreeSeries) {
  Figure1Config cfg;
  cfg.B = 2000;
  cfg.grid_points = 101;
  const Figure1Result r = figure1(cfg);
  ASSERT_EQ(r.grids.size(), 3u);
  EXPECT_EQ(r.grids[0].label, "exact_posterior");
  EXPECT_EQ(r.grids[1].label, "rs_jacobian");
  EXPECT_EQ(r.grids[2].label, "rs_no_jacobian");
  for (const auto& g : r.grids) EXPECT_EQ(g.grid.size(), 101);
  EXPECT_GT(r.sigma2_hat, 0.0);
  EXPECT_LT(r.ecdf_jacobian, r.ecdf_no_jacobian);
}

TEST(Replication, SummaryStatistics) {
  ExperimentConfig c = small_normal_config();
  const ReplicationOutcome out = run_replications_detailed(c);
  ASSERT_EQ(out.labels.size(), 4u);
  for (std::size_t e = 0; e < out.labels.size(); ++e) {
    const Matrix& est = out.estimates[e];
    ASSERT_EQ(est.rows(), 30);
    for (Index j = 0; j < 2; ++j) {
      const double mean = est.col(j).mean();
      const double sd = std::sqrt((est.col(j).array() - mean).square().sum() / 29.0);
      const ReplicationRow& row = out.table.at(out.labels[e], j == 0 ? "m" : "sigma2");
      EXPECT_NEAR(row.mean, mean, 1e-12);
      EXPECT_NEAR(row.sd, sd, 1e-12);
      EXPECT_NEAR(row.mc_se, sd / std::sqrt(30.0), 1e-14);
      EXPECT_NEAR(row.bias, row.mean - row.truth, 1e-15);
      EXPECT_EQ(row.failures, 0u);
    }
  }
}

TEST(Replication, DataStreamsAreReproducibleOutsideTheHarness) {
  // ML and MD recomputed from the documented data streams
  const ExperimentConfig c = small_normal_config();
  const ReplicationOutcome out = run_replications_detailed(c);
  const NormalModel model(c.T, c.m, c.sigma2);
  for (Index r = 0; r < c.replications; ++r) {
    const Dataset data = model.simulate_data(
        model.truth(), model.simulate_innovations(SeedSpec{c.master_seed, static_cast<std::uint64_t>(r)}.child(0)));
    const Vector& y = std::get<NormalData>(data).y;
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / static_cast<double>(c.T);
    EXPECT_NEAR(out.estimates[0](r, 0), mean, 1e-13);
    EXPECT_NEAR(out.estimates[0](r, 1), var, 1e-13);
    EXPECT_NEAR(out.estimates[1](r, 1), var * c.T / (c.T - 1.0), 1e-12);
  }
}

TEST(Replication, ThreadCountDoesNotChangeResults) {
  const ExperimentConfig c = small_normal_config();
  const ReplicationOutcome one = run_replications_detailed(c, 1);
  const ReplicationOutcome three = run_replications_detailed(c, 3);
  EXPECT_EQ(one.table, three.table);
  for (std::size_t e = 0; e < one.estimates.size(); ++e)
    EXPECT_TRUE(one.estimates[e].cwiseEqual(three.estimates[e]).all()) << one.labels[e];
}

TEST(Replication, EstimatorStreamsKeyedByLabel) {
  // reordering estimators leaves each estimator's results untouched
  ExperimentConfig a = small_normal_config();
  ExperimentConfig b = a;
  std::swap(b.estimators[2], b.estimators[3]);
  const ReplicationTable ta = run_replications(a), tb = run_replications(b);
  for (const char* label : {"smd", "rs"})
    for (const char* p : {"m", "sigma2"}) EXPECT_EQ(ta.at(label, p), tb.at(label, p));
}
