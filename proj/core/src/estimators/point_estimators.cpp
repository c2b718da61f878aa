#include "simest/estimators/point_estimators.hpp"

#include <cmath>

#include "simest/core/error.hpp"

namespace simest {

EstimateSummary md_estimate(const Model& model, const AuxVector& psi_hat, const Matrix&, const Matrix* aux_cov) {
  std::optional<ParamVector> theta = model.md_from_aux(psi_hat);
  if (!theta) throw Error(ErrorCode::NoBindingFunction, "model has no direct minimum distance inversion");
  if (const auto psi = model.analytic_binding(*theta)) {
    if ((psi->values() - psi_hat.values()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + psi_hat.values().cwiseAbs().maxCoeff()))
      throw Error(ErrorCode::NoConvergence, "binding inversion does not reproduce psi_hat");
  }
  Vector spread = Vector::Zero(model.dim());
  if (aux_cov != nullptr) {
    const Matrix G = model.analytic_jacobian(*theta).value_or(Matrix::Identity(model.dim(), model.dim()));
    const Matrix Ginv = G.inverse();
    spread = ((Ginv * *aux_cov * Ginv.transpose()).diagonal() / model.sample_size()).cwiseMax(0.0).cwiseSqrt();
  }
  return EstimateSummary{*theta, spread, "md", 0, 0, 1.0, 0};
}

std::vector<InnovationSet> fixed_innovations(const Model& model, const SeedSpec& seed, Index S) {
  if (S < 1) throw Error(ErrorCode::InvalidArgument, "S must be at least 1");
  std::vector<InnovationSet> sims;
  sims.reserve(static_cast<std::size_t>(S));
  for (Index s = 0; s < S; ++s) sims.push_back(model.simulate_innovations(seed.child(static_cast<std::uint64_t>(s))));
  return sims;
}

VectorMap simulated_binding(const Model& model, const std::vector<InnovationSet>& sims) {
  const ParamSpace space = model.space();
  return [&model, &sims, space](const Vector& theta) -> Vector {
    const ParamVector at(space, theta);
    Vector acc = Vector::Zero(space.size());
    for (const InnovationSet& eps : sims) acc += model.simulate_aux(at, eps).values();
    return acc / static_cast<double>(sims.size());
  };
}

EstimateSummary smd_estimate(const Model& model, const AuxVector& psi_hat, const Matrix& W, Index S,
                             const SeedSpec& seed, const ParamVector& theta0, const SolverConfig& cfg,
                             const Matrix* aux_cov) {
  const std::vector<InnovationSet> sims = fixed_innovations(model, seed, S);
  const VectorMap binding = simulated_binding(model, sims);
  const Vector target = psi_hat.values();
  const VectorMap residual = [&](const Vector& theta) -> Vector { return target - binding(theta); };
  const SolveReport rep = minimize_J(residual, theta0, W, cfg);
  if (!rep.converged) throw Error(ErrorCode::NoConvergence, "SMD objective did not reach tolerance");

  Vector spread = Vector::Zero(model.dim());
  if (aux_cov != nullptr) {
    const Matrix Ginv = jacobian_fd(binding, rep.solution, cfg).inverse();
    const double inflation = 1.0 + 1.0 / static_cast<double>(S);
    spread = (inflation * (Ginv * *aux_cov * Ginv.transpose()).diagonal() / model.sample_size()).cwiseMax(0.0).cwiseSqrt();
  }
  return EstimateSummary{rep.solution, spread, "smd", 0, static_cast<std::size_t>(S), 1.0, 0};
}

EstimateSummary bootstrap_bias_correct(const Model& model, const ParamVector& theta_hat, Index B,
                                       const SeedSpec& seed) {
  if (B < 1) throw Error(ErrorCode::InvalidArgument, "B must be at least 1");
  const Index K = model.dim();
  Matrix est(B, K);
  for (Index b = 0; b < B; ++b) {
    const InnovationSet eps = model.simulate_innovations(seed.child(static_cast<std::uint64_t>(b)));
    est.row(b) = model.aux_as_estimate(model.simulate_aux(theta_hat, eps)).values().transpose();
  }
  const Vector mean = est.colwise().mean().transpose();
  const Vector corrected = (2.0 * theta_hat.values() - mean)
                               .cwiseMax(model.space().lower())
                               .cwiseMin(model.space().upper());
  const Vector sd = B > 1 ? Vector(((est.rowwise() - mean.transpose()).array().square().colwise().sum() /
                                    static_cast<double>(B - 1))
                                       .sqrt()
                                       .transpose())
                          : Vector(Vector::Zero(K));
  return EstimateSummary{ParamVector(model.space(), corrected), sd, "bootstrap", static_cast<std::size_t>(B),
                         static_cast<std::size_t>(B), 1.0, 0};
}

EstimateSummary summarize(const WeightedDraws& draws, std::string estimator, std::size_t simulations) {
  return EstimateSummary{weighted_mean(draws), weighted_sd(draws), std::move(estimator),
                         static_cast<std::size_t>(draws.size()), simulations, draws.acceptance_rate,
                         draws.solver_failures};
}

}  // namespace simest
