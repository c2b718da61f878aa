#pragma once

#include <optional>
#include <string>
#include <variant>

#include "simest/core/quasi_likelihood.hpp"
#include "simest/core/random.hpp"
#include "simest/core/types.hpp"

namespace simest {

struct NormalData {
  Vector y;
};

/// Balanced panel. y and x are N x T for t = 1..T; y0 holds the initial
/// condition y_{i,0}.
struct PanelData {
  Matrix y;
  Matrix x;
  Vector y0;

  Index units() const { return y.rows(); }
  Index periods() const { return y.cols(); }
};

using Dataset = std::variant<NormalData, PanelData>;

/// Fixed structural randomness for one simulated dataset. shocks are the
/// model innovations; regressors and effects are only used by the panel.
struct InnovationSet {
  Vector shocks;
  Vector regressors;
  Vector effects;
};

/// A data-generating process with exactly identifying auxiliary statistics.
/// Implementations are immutable and safe to share across threads.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual const ParamSpace& space() const = 0;
  Index dim() const { return space().size(); }
  /// n in J = (n/2) g'Wg and in the sqrt(n) asymptotic scaling.
  virtual double sample_size() const = 0;
  virtual const ParamVector& truth() const = 0;

  virtual InnovationSet simulate_innovations(const SeedSpec& seed) const = 0;
  virtual Dataset simulate_data(const ParamVector& theta, const InnovationSet& eps) const = 0;
  virtual AuxVector aux_stats(const Dataset& data) const = 0;
  virtual AuxVector simulate_aux(const ParamVector& theta, const InnovationSet& eps) const {
    return aux_stats(simulate_data(theta, eps));
  }

  /// Asymptotic covariance of sqrt(n)(psi_hat - psi) estimated from data.
  virtual Matrix aux_covariance(const Dataset& data) const = 0;
  /// Weighting used for distances between auxiliary statistics (ABC ball).
  virtual Matrix distance_weighting(const Dataset& data) const = 0;
  /// Moment discrepancy for LT chains and the LT optimization view.
  virtual QuasiLikelihood quasi_likelihood(const Dataset& data) const = 0;

  virtual std::optional<AuxVector> analytic_binding(const ParamVector&) const { return std::nullopt; }
  virtual std::optional<Matrix> analytic_jacobian(const ParamVector&) const { return std::nullopt; }
  /// Direct minimum distance point for given auxiliary statistics, when the
  /// binding function can be inverted in closed form or the statistics are
  /// themselves the MD estimator.
  virtual std::optional<ParamVector> md_from_aux(const AuxVector&) const { return std::nullopt; }

  /// The auxiliary statistics read as a parameter estimate (ML / LSDV).
  virtual ParamVector aux_as_estimate(const AuxVector& psi) const = 0;
};

}  // namespace simest
