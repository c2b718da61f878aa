#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "simest/core/random.hpp"
#include "simest/core/weights.hpp"
#include "simest/estimators/prior.hpp"
#include "simest/models/model.hpp"

namespace simest {

/// Gaussian random-walk proposal. During the first adapt_window proposals
/// the scales are tuned toward target_acceptance, then frozen.
struct ProposalSpec {
  Vector scale;
  Index adapt_window = 0;
  double target_acceptance = 0.3;
};

/// Default scales 2.38/sqrt(K) times a preliminary SD.
ProposalSpec default_proposal(const Vector& preliminary_sd, Index adapt_window = 2000);

struct ChainConfig {
  Index draws = 1000;  // B kept
  Index burn_in = 1000;
  Index thin = 1;
  double delta = 0.0;  // ABC tolerance
  Index simulations = 1;  // S for SLT
  SeedSpec seed;
  Index init_retries = 10000;
};

/// Log quasi-likelihood used inside a Metropolis step. floor is the value the
/// proposal must beat to be accepted, which lets indicator likelihoods skip
/// work; proposal_index identifies the step for fresh-stream simulators.
using ChainLogLikelihood = std::function<double(const Vector& theta, std::uint64_t proposal_index, double floor)>;

/// Random-walk Metropolis on prior x likelihood. Order of proposals:
/// adaptation window, burn-in, then draws * thin with every thin-th state
/// kept. start_loglik, when given, replaces the evaluation at the start.
/// Throws InitializationFailure if the start has zero target density.
WeightedDraws random_walk_metropolis(const ParamSpace& space, const ChainLogLikelihood& loglik, const Prior& prior,
                                     ProposalSpec proposal, const ParamVector& start, const ChainConfig& cfg,
                                     std::optional<double> start_loglik = std::nullopt);

/// MCMC-ABC: accept when the W-norm distance between psi_hat and statistics
/// simulated at the proposal with a fresh stream is within delta, times the
/// prior ratio. The chain starts at theta_init or, if that misses the ball,
/// at the first of up to init_retries jittered candidates that hits it.
WeightedDraws mcmc_abc_chain(const Model& model, const AuxVector& psi_hat, const Matrix& W, const Prior& prior,
                             const ProposalSpec& proposal, const ParamVector& theta_init, const ChainConfig& cfg);

}  // namespace simest
