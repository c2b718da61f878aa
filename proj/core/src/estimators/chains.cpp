#include "simest/estimators/chains.hpp"

#include <cmath>
#include <limits>

#include "simest/core/error.hpp"

namespace simest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr Index kAdaptBatch = 50;

}  // namespace

ProposalSpec default_proposal(const Vector& preliminary_sd, Index adapt_window) {
  const double k = static_cast<double>(preliminary_sd.size());
  Vector scale = (2.38 / std::sqrt(k)) * preliminary_sd.cwiseAbs();
  for (Index j = 0; j < scale.size(); ++j)
    if (!(scale[j] > 0.0) || !std::isfinite(scale[j])) scale[j] = 0.1;
  return ProposalSpec{scale, adapt_window, 0.3};
}

WeightedDraws random_walk_metropolis(const ParamSpace& space, const ChainLogLikelihood& loglik, const Prior& prior,
                                     ProposalSpec proposal, const ParamVector& start, const ChainConfig& cfg,
                                     std::optional<double> start_loglik) {
  const Index K = space.size();
  if (cfg.draws < 1 || cfg.thin < 1 || cfg.burn_in < 0) throw Error(ErrorCode::InvalidArgument, "invalid chain lengths");
  if (proposal.scale.size() != K || !(proposal.scale.array() > 0.0).all())
    throw Error(ErrorCode::InvalidArgument, "proposal scales must be positive, one per parameter");

  RandomStream rng = derive_stream(cfg.seed.child(0));
  Vector cur = start.values();
  double cur_prior = prior.log_density(cur);
  double cur_like = start_loglik ? *start_loglik : std::isfinite(cur_prior) ? loglik(cur, 0, kNegInf) : kNegInf;
  if (!std::isfinite(cur_prior + cur_like))
    throw Error(ErrorCode::InitializationFailure, "chain start has zero target density");

  const Index adapt = proposal.adapt_window;
  const Index total = adapt + cfg.burn_in + cfg.draws * cfg.thin;
  Matrix kept(cfg.draws, K);
  Index n_kept = 0, batch_acc = 0, kept_acc = 0, kept_props = 0;
  Vector z(K);

  for (Index step = 0; step < total; ++step) {
    rng.fill_normal({z.data(), static_cast<std::size_t>(K)});
    const Vector prop = cur + proposal.scale.cwiseProduct(z);
    const double log_u = std::log(rng.uniform());
    bool accept = false;
    const double prop_prior = prior.log_density(prop);
    if (std::isfinite(prop_prior)) {
      // accept iff log_u < prop_prior + like - cur_prior - cur_like
      const double floor = log_u + cur_prior + cur_like - prop_prior;
      const double like = loglik(prop, static_cast<std::uint64_t>(step + 1), floor);
      if (like > floor) {
        cur = prop;
        cur_prior = prop_prior;
        cur_like = like;
        accept = true;
      }
    }
    if (step < adapt) {
      batch_acc += accept ? 1 : 0;
      if ((step + 1) % kAdaptBatch == 0) {
        const double rate = static_cast<double>(batch_acc) / static_cast<double>(kAdaptBatch);
        proposal.scale *= std::exp(rate - proposal.target_acceptance);
        batch_acc = 0;
      }
      continue;
    }
    const Index post = step - adapt - cfg.burn_in;
    if (post < 0) continue;
    ++kept_props;
    kept_acc += accept ? 1 : 0;
    if ((post + 1) % cfg.thin == 0) kept.row(n_kept++) = cur.transpose();
  }
  WeightedDraws out = WeightedDraws::uniform(space, std::move(kept));
  out.acceptance_rate = static_cast<double>(kept_acc) / static_cast<double>(std::max<Index>(1, kept_props));
  return out;
}

WeightedDraws mcmc_abc_chain(const Model& model, const AuxVector& psi_hat, const Matrix& W, const Prior& prior,
                             const ProposalSpec& proposal, const ParamVector& theta_init, const ChainConfig& cfg) {
  if (!(cfg.delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "ABC tolerance must be positive");
  const ParamSpace& space = model.space();
  const Vector target = psi_hat.values();
  std::size_t simulations = 0;

  const auto distance = [&](const Vector& theta, const SeedSpec& stream) {
    ++simulations;
    try {
      const Vector d = model.simulate_aux(ParamVector(space, theta), model.simulate_innovations(stream)).values() - target;
      return std::sqrt(std::max(0.0, d.dot(W * d)));
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Initial state: a point whose own simulation lands in the ball.
  const SeedSpec init_seed = cfg.seed.child(2);
  RandomStream jitter = derive_stream(init_seed.child(0));
  Vector start;
  for (Index attempt = 0; attempt < cfg.init_retries && start.size() == 0; ++attempt) {
    Vector cand = theta_init.values();
    if (attempt > 0)
      for (Index j = 0; j < cand.size(); ++j) cand[j] += proposal.scale[j] * jitter.normal();
    if (!std::isfinite(prior.log_density(cand))) continue;
    if (distance(cand, init_seed.child(static_cast<std::uint64_t>(attempt + 1))) <= cfg.delta) start = cand;
  }
  if (start.size() == 0) throw Error(ErrorCode::InitializationFailure, "no starting point entered the ABC ball");

  const SeedSpec sim_seed = cfg.seed.child(1);
  const ChainLogLikelihood indicator = [&](const Vector& theta, std::uint64_t index, double floor) {
    if (floor >= 0.0) return kNegInf;  // prior ratio already rejects
    return distance(theta, sim_seed.child(index)) <= cfg.delta ? 0.0 : kNegInf;
  };
  WeightedDraws out = random_walk_metropolis(space, indicator, prior, proposal, ParamVector(space, start), cfg, 0.0);
  out.simulations = simulations;
  return out;
}

}  // namespace simest
