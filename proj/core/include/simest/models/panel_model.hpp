#pragma once

#include "simest/models/model.hpp"

namespace simest {

enum class EffectsDistribution { Uniform, Normal };

/// Design of y_it = alpha_i + rho y_{i,t-1} + beta x_it + sigma eps_it.
/// Effects are U(-effects_scale, effects_scale) or N(0, effects_scale^2);
/// x_it ~ N(0, x_sd^2). The recursion starts from 0 burn_in periods before
/// the observed initial condition y_i0.
struct PanelDesign {
  Index units = 100;
  Index periods = 6;
  double rho = 0.6;
  double beta = 1.0;
  double sigma2 = 2.0;
  EffectsDistribution effects = EffectsDistribution::Uniform;
  double effects_scale = 2.0;
  double x_sd = 1.0;
  Index burn_in = 0;
};

/// Parameter space (rho, beta, sigma2) with rho in [-1, 1] and sigma2 >= 0.
ParamSpace panel_space();

/// Simulates one panel. When fixed_x is non-null it replaces the observed
/// regressors (simulation conditional on the design).
PanelData panel_simulate(const PanelDesign& design, const ParamVector& theta, const InnovationSet& eps,
                         const Matrix* fixed_x = nullptr);

/// Sample averages of the within-transformed moment conditions.
AuxVector panel_moments(const ParamVector& theta, const PanelData& data);
/// Per-observation moment contributions, one row per (i, t), row index i*T + t.
Matrix panel_moment_contributions(const ParamVector& theta, const PanelData& data);
/// d(mean moments)/d theta.
Matrix panel_moment_jacobian(const ParamVector& theta, const PanelData& data);

/// Within (fixed-effects) least squares: (rho, beta) and
/// sigma2 = SSR / (N (T-1)). Throws SingularDesign.
ParamVector panel_lsdv(const PanelData& data);

/// Inverse of the centered second-moment matrix of moment contributions.
/// Throws SingularCovariance.
Matrix panel_weighting_matrix(const PanelData& data, const ParamVector& theta);

/// Log Gaussian likelihood of the demeaned panel in T-1 orthonormal
/// coordinates per unit. Throws NonPositiveVariance.
double panel_exact_loglik(const ParamVector& theta, const PanelData& data);

/// (T-1) x T matrix with orthonormal rows orthogonal to the unit vector.
Matrix demeaning_basis(Index periods);

class DynamicPanelModel final : public Model {
 public:
  explicit DynamicPanelModel(PanelDesign design);

  const PanelDesign& design() const { return design_; }
  /// Copy that holds regressors at the given observed design in every simulation.
  DynamicPanelModel conditional_on(const Matrix& x) const;
  bool conditions_on_x() const { return fixed_x_.size() > 0; }

  std::string name() const override { return "panel"; }
  const ParamSpace& space() const override { return truth_.space(); }
  double sample_size() const override;
  const ParamVector& truth() const override { return truth_; }

  InnovationSet simulate_innovations(const SeedSpec& seed) const override;
  Dataset simulate_data(const ParamVector& theta, const InnovationSet& eps) const override;
  AuxVector aux_stats(const Dataset& data) const override;

  /// G^{-1} Sigma_g G^{-T} at the LSDV point.
  Matrix aux_covariance(const Dataset& data) const override;
  /// Moment weighting W_g at the LSDV point.
  Matrix distance_weighting(const Dataset& data) const override;
  QuasiLikelihood quasi_likelihood(const Dataset& data) const override;

  std::optional<ParamVector> md_from_aux(const AuxVector& psi) const override;
  ParamVector aux_as_estimate(const AuxVector& psi) const override;

 private:
  PanelDesign design_;
  ParamVector truth_;
  Matrix fixed_x_;
};

}  // namespace simest
