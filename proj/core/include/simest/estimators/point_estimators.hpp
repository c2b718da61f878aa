#pragma once

#include <cstddef>
#include <vector>

#include "simest/core/random.hpp"
#include "simest/core/weights.hpp"
#include "simest/models/model.hpp"
#include "simest/solver/solver.hpp"

namespace simest {

/// Minimum distance estimate. Under exact identification the weighting
/// matrix does not affect the result, so W is accepted for interface
/// symmetry only. spread is the delta-method SD when aux_cov is given,
/// zero otherwise. Throws NoBindingFunction.
EstimateSummary md_estimate(const Model& model, const AuxVector& psi_hat, const Matrix& W,
                            const Matrix* aux_cov = nullptr);

/// S innovation sets for simulated estimators, stream s = seed.child(s).
std::vector<InnovationSet> fixed_innovations(const Model& model, const SeedSpec& seed, Index S);

/// theta -> average of the simulated auxiliary statistics over the given
/// innovation sets (common random numbers).
VectorMap simulated_binding(const Model& model, const std::vector<InnovationSet>& sims);

/// Simulated minimum distance with S fixed innovation sets drawn from seed.
/// spread is the sandwich SD (1 + 1/S) G^{-1} Sigma G^{-T} / n when aux_cov
/// is given. Throws NoConvergence.
EstimateSummary smd_estimate(const Model& model, const AuxVector& psi_hat, const Matrix& W, Index S,
                             const SeedSpec& seed, const ParamVector& theta0, const SolverConfig& cfg = {},
                             const Matrix* aux_cov = nullptr);

/// Parametric bootstrap: 2 theta_hat - mean of the auxiliary-statistic
/// estimator over B datasets simulated at theta_hat.
EstimateSummary bootstrap_bias_correct(const Model& model, const ParamVector& theta_hat, Index B,
                                       const SeedSpec& seed);

/// Posterior mean and SD of weighted draws.
EstimateSummary summarize(const WeightedDraws& draws, std::string estimator, std::size_t simulations = 0);

}  // namespace simest
