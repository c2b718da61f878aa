#pragma once

#include <vector>

#include "simest/core/quasi_likelihood.hpp"
#include "simest/core/weights.hpp"
#include "simest/estimators/chains.hpp"
#include "simest/estimators/prior.hpp"
#include "simest/models/model.hpp"
#include "simest/solver/solver.hpp"

namespace simest {

/// Settings shared by the optimization views of LT and SLT.
struct PerturbedSolveConfig {
  Index draws = 1000;  // B
  SeedSpec seed;
  int max_attempts = 50;
  double max_failure_rate = 0.01;
  SolverConfig solver;
};

/// Chain on exp(-J(theta)) prior(theta) with J = (n/2) g'Wg.
WeightedDraws lt_chain(const QuasiLikelihood& q, const ParamSpace& space, const Prior& prior,
                       const ProposalSpec& proposal, const ParamVector& start, const ChainConfig& cfg);

/// Optimization view: per draw, A ~ N(0, covariance), solve
/// g(theta) = A / sqrt(n), weight prior / |det dg/dtheta|. W shapes the solve
/// path only. Solutions outside the box or the prior support get zero weight.
WeightedDraws lt_optimization(const QuasiLikelihood& q, const ParamSpace& space, const Prior& prior,
                              const ParamVector& theta0, const PerturbedSolveConfig& cfg, const Matrix* W = nullptr);

/// g(theta) = psi_hat - mean_s psi_sim(theta; eps_s) over fixed innovation
/// sets, with the given weighting and covariance of sqrt(n)(psi_hat - psi).
/// The returned object keeps the model by reference.
QuasiLikelihood simulated_quasi_likelihood(const Model& model, const AuxVector& psi_hat, const Matrix& W,
                                           const Matrix& aux_cov, std::vector<InnovationSet> sims);

/// Stream from which the S fixed simulations of SLT are drawn.
SeedSpec slt_simulation_seed(const SeedSpec& seed);

/// SLT chain: lt_chain on the simulated quasi-likelihood, S = cfg.simulations
/// innovation sets drawn once from slt_simulation_seed(cfg.seed).
WeightedDraws slt_chain(const Model& model, const AuxVector& psi_hat, const Matrix& W, const Prior& prior,
                        const ProposalSpec& proposal, const ParamVector& start, const ChainConfig& cfg);

/// SLT optimization view: lt_optimization on the simulated quasi-likelihood
/// with S fixed simulations and perturbation covariance aux_cov.
WeightedDraws slt_optimization(const Model& model, const AuxVector& psi_hat, const Matrix& aux_cov,
                               const Prior& prior, Index S, const ParamVector& theta0,
                               const PerturbedSolveConfig& cfg, const Matrix* W = nullptr);

/// Symmetric square root of a PSD matrix (negative eigenvalues clipped).
Matrix psd_sqrt(const Matrix& cov);

}  // namespace simest
