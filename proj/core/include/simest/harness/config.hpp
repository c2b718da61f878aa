#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "simest/harness/figures.hpp"
#include "simest/models/panel_model.hpp"
#include "simest/solver/solver.hpp"

namespace simest {

enum class ModelKind { Normal, Panel };

enum class EstimatorKind { ML, MD, SMD, RS, ABC, LTChain, LTOpt, SLTChain, SLTOpt, Bootstrap, BC };

/// Which matrix weights auxiliary-statistic distances:
/// aux      inverse asymptotic covariance of the statistics,
/// moment   the model's distance weighting (moment covariance for the panel),
/// identity the identity matrix.
enum class WeightingKind { Aux, Moment, Identity };

enum class PriorKind { Flat, Power };

struct EstimatorSpec {
  std::string label;
  EstimatorKind kind = EstimatorKind::MD;
  Index B = 500;
  Index S = 1;
  Index burn_in = 1000;
  Index thin = 1;
  Index adapt_window = 2000;
  double target_acceptance = 0.3;
  double delta = 0.0;
  PriorKind prior = PriorKind::Flat;
  double alpha = 0.0;
  WeightingKind weighting = WeightingKind::Aux;
  bool apply_jacobian = true;
  /// Simulations of the SMD fit used to start MCMC-ABC.
  Index init_S = 20;
  SolverConfig solver;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ModelKind model = ModelKind::Normal;
  // normal model
  Index T = 10;
  double m = 0.0;
  double sigma2 = 2.0;
  // panel model
  PanelDesign panel;
  bool condition_on_x = false;

  std::vector<EstimatorSpec> estimators;
  Index replications = 200;
  std::uint64_t master_seed = 1;
  std::string output_dir = "results";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

bool operator==(const PanelDesign& a, const PanelDesign& b);
bool operator==(const SolverConfig& a, const SolverConfig& b);

/// Nested key/value text (INFO syntax). Missing keys take the defaults above.
/// Throws ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ExperimentConfig& cfg);
std::string config_to_string(const ExperimentConfig& cfg);

std::string to_string(EstimatorKind k);
EstimatorKind parse_estimator_kind(const std::string& s);

std::unique_ptr<Model> make_model(const ExperimentConfig& cfg);

/// Keys T, m, sigma2, B, grid_points, master_seed; missing keys keep defaults.
Figure1Config parse_figure1_config(std::istream& in);
Figure1Config load_figure1_config(const std::string& path);

}  // namespace simest
