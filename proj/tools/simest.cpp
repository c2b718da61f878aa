#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "simest/core/error.hpp"
#include "simest/harness/config.hpp"
#include "simest/harness/figures.hpp"
#include "simest/harness/replication.hpp"
#include "simest/harness/selftest.hpp"
#include "simest/harness/tables.hpp"
#include "simest/oracles/normal_oracles.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> provenance(const simest::ExperimentConfig& cfg) {
  std::vector<std::string> lines{fmt::format("master_seed {}", cfg.master_seed), "config:"};
  std::istringstream text(simest::config_to_string(cfg));
  for (std::string line; std::getline(text, line);) lines.push_back("  " + line);
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-based estimators and Monte Carlo experiments"};
  app.require_subcommand(1);

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::uint64_t> seed_override;
  std::string out_dir;
  app.add_option("--threads", threads, "Worker threads for replications")->check(CLI::PositiveNumber);
  app.add_option("--seed-override", seed_override, "Replace the configured master seed");
  app.add_option("--out-dir", out_dir, "Directory for outputs (default: the config's output_dir)");

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment from a config file");
  std::string config_path;
  bool paper_layout = false;
  run->add_option("config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  run->add_flag("--paper-layout", paper_layout, "Markdown with estimators as columns");

  auto* oracle = app.add_subcommand("oracle", "Closed-form properties for the normal-variance example");
  std::string estimator;
  simest::NormalOracleInput in;
  oracle->add_option("estimator", estimator, "ml, md, bc, bc_r, rs_u, rs_r, smd, lt_u, slt_u, bootstrap")->required();
  oracle->add_option("--T", in.T, "Sample length")->default_val(10);
  oracle->add_option("--S", in.S, "Simulations")->default_val(1);
  oracle->add_option("--B", in.B, "Draws")->default_val(1);
  oracle->add_option("--sigma2", in.sigma2, "True variance")->default_val(1.0);
  oracle->add_option("--sigma2-hat", in.sigma2_hat, "Observed MLE of the variance")->default_val(1.0);
  oracle->add_option("--alpha", in.alpha, "Prior exponent for bc posterior stats")->default_val(0.0);

  auto* fig = app.add_subcommand("figure1", "Reverse-sampler vs exact posterior densities for the normal variance");
  simest::Figure1Config fc;
  std::uint64_t fig_seed = fc.seed.master_seed;
  std::string fig_config;
  fig->add_option("--config", fig_config, "Figure config; flags given on the command line take precedence")
      ->check(CLI::ExistingFile);
  fig->add_option("--B", fc.B, "Reverse-sampler draws")->default_val(fc.B);
  fig->add_option("--T", fc.T, "Sample length")->default_val(fc.T);
  fig->add_option("--seed", fig_seed, "Master seed")->default_val(fig_seed);
  fig->add_option("--sigma2", fc.sigma2, "True variance")->default_val(fc.sigma2);

  auto* self = app.add_subcommand("selftest", "Quick checks against closed forms");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      simest::ExperimentConfig cfg = simest::load_config(config_path);
      if (seed_override) cfg.master_seed = *seed_override;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const simest::ReplicationTable table = simest::run_replications(cfg, threads);
      for (std::size_t i = 0; i < table.rows.size(); ++i)
        if (i == 0 || table.rows[i].estimator != table.rows[i - 1].estimator)
          fmt::print(stderr, "{}: {:.1f} s\n", table.rows[i].estimator, table.rows[i].wall_seconds);
      fs::create_directories(cfg.output_dir);
      simest::TableOptions opts;
      opts.provenance = provenance(cfg);
      const fs::path base = fs::path(cfg.output_dir) / cfg.name;
      simest::emit_table(base.string() + ".csv", table, opts);
      opts.format = simest::TableFormat::Markdown;
      opts.paper_layout = paper_layout;
      simest::emit_table(base.string() + ".md", table, opts);
      opts.provenance.clear();
      simest::emit_table(std::cout, table, opts);
      std::cout << "wrote " << base.string() << ".csv and .md\n";
      return 0;
    }
    if (*oracle) {
      const auto e = simest::parse_oracle_estimator(estimator);
      const simest::OracleRow row = simest::table2_row(e, in);
      fmt::print("estimator {}\nexpected {}\nbias {}\nvariance {}\nconditional_mean {}\n", simest::to_string(e),
                 row.expected, row.bias, row.variance, simest::table2_conditional_mean(e, in));
      if (e == simest::OracleEstimator::BC) {
        const simest::PosteriorStats ps = simest::bc_posterior_stats(in);
        fmt::print("posterior_mode {}\nposterior_mean {}\n", ps.mode, ps.mean);
      }
      return 0;
    }
    if (*fig) {
      if (!fig_config.empty()) {
        const simest::Figure1Config file = simest::load_figure1_config(fig_config);
        if (fig->count("--B") == 0) fc.B = file.B;
        if (fig->count("--T") == 0) fc.T = file.T;
        if (fig->count("--sigma2") == 0) fc.sigma2 = file.sigma2;
        if (fig->count("--seed") == 0) fig_seed = file.seed.master_seed;
        fc.m = file.m;
        fc.grid_points = file.grid_points;
      }
      fc.seed = simest::SeedSpec{seed_override.value_or(fig_seed), 0};
      const simest::Figure1Result r = simest::figure1(fc);
      const fs::path dir = out_dir.empty() ? fs::path("results") : fs::path(out_dir);
      fs::create_directories(dir);
      const std::vector<std::string> prov{
          fmt::format("figure1 T={} sigma2={} B={} master_seed={}", fc.T, fc.sigma2, fc.B, fc.seed.master_seed),
          fmt::format("sigma2_hat={} ecdf_jacobian={} ecdf_no_jacobian={}", r.sigma2_hat, r.ecdf_jacobian,
                      r.ecdf_no_jacobian)};
      simest::emit_figure_data((dir / "figure1.csv").string(), r.grids, prov);
      fmt::print("sigma2_hat {:.6f}\nECDF sup distance: jacobian {:.4f}, no jacobian {:.4f}\n"
                 "density L1 distance: jacobian {:.4f}, no jacobian {:.4f}\nwrote {}\n",
                 r.sigma2_hat, r.ecdf_jacobian, r.ecdf_no_jacobian, r.l1_jacobian, r.l1_no_jacobian,
                 (dir / "figure1.csv").string());
      return 0;
    }
    if (*self) return simest::run_selftest(std::cout, threads) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
