#pragma once

#include "simest/models/model.hpp"

namespace simest {

/// (mean, variance with divisor T). Throws DegenerateSample when the sample
/// has zero variance.
AuxVector normal_aux_stats(const Vector& y);

/// Closed-form theta with psi_sim(theta; eps) == psi_hat.
/// Throws DegenerateInnovations when the innovations have zero variance.
ParamVector normal_exact_solve(const AuxVector& psi_hat, const InnovationSet& eps);

/// Parameter space (m, sigma2) with sigma2 >= 0.
ParamSpace normal_space();

/// y_t ~ N(m, sigma2), t = 1..T.
class NormalModel final : public Model {
 public:
  NormalModel(Index T, double m, double sigma2);

  Index periods() const { return T_; }

  std::string name() const override { return "normal"; }
  const ParamSpace& space() const override { return truth_.space(); }
  double sample_size() const override { return static_cast<double>(T_); }
  const ParamVector& truth() const override { return truth_; }

  InnovationSet simulate_innovations(const SeedSpec& seed) const override;
  Dataset simulate_data(const ParamVector& theta, const InnovationSet& eps) const override;
  AuxVector aux_stats(const Dataset& data) const override;
  AuxVector simulate_aux(const ParamVector& theta, const InnovationSet& eps) const override;

  Matrix aux_covariance(const Dataset& data) const override;
  Matrix distance_weighting(const Dataset& data) const override;
  QuasiLikelihood quasi_likelihood(const Dataset& data) const override;

  /// Finite-sample binding (m, sigma2 (T-1)/T).
  std::optional<AuxVector> analytic_binding(const ParamVector& theta) const override;
  std::optional<Matrix> analytic_jacobian(const ParamVector& theta) const override;
  std::optional<ParamVector> md_from_aux(const AuxVector& psi) const override;
  ParamVector aux_as_estimate(const AuxVector& psi) const override;

 private:
  Index T_;
  ParamVector truth_;
};

}  // namespace simest
