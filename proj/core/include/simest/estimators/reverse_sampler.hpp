#pragma once

#include "simest/core/weights.hpp"
#include "simest/estimators/prior.hpp"
#include "simest/models/model.hpp"
#include "simest/solver/solver.hpp"

namespace simest {

struct ReverseSamplerConfig {
  Index draws = 1000;  // B
  SeedSpec seed;
  bool apply_jacobian = true;
  /// Replacement streams tried per draw before giving up on it.
  int max_attempts = 50;
  /// Fraction of draws allowed to need a replacement stream.
  double max_failure_rate = 0.01;
  SolverConfig solver;
};

/// Innovation stream used for draw b after `attempt` failed solves.
SeedSpec reverse_sampler_stream(const SeedSpec& seed, Index b, int attempt);

/// One fresh innovation set per draw, exact solve psi_sim(theta_b) = psi_hat,
/// log weight = log prior - log|det Jacobian| (Jacobian term dropped when
/// apply_jacobian is false). Solves that leave the parameter box get zero
/// weight; non-converged solves are redrawn on a new stream and counted.
/// Throws TooManyFailures.
WeightedDraws reverse_sampler(const Model& model, const AuxVector& psi_hat, const Prior& prior,
                              const ParamVector& theta0, const ReverseSamplerConfig& cfg,
                              const Matrix* W = nullptr);

}  // namespace simest
