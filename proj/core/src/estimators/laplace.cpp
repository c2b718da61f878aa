#include "simest/estimators/laplace.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include <Eigen/Eigenvalues>

#include "simest/core/error.hpp"
#include "simest/estimators/point_estimators.hpp"
#include "simest/estimators/reverse_sampler.hpp"

namespace simest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

Matrix psd_sqrt(const Matrix& cov) {
  if (cov.rows() != cov.cols()) throw Error(ErrorCode::ShapeMismatch, "covariance must be square");
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (cov + cov.transpose()));
  const Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

WeightedDraws lt_chain(const QuasiLikelihood& q, const ParamSpace& space, const Prior& prior,
                       const ProposalSpec& proposal, const ParamVector& start, const ChainConfig& cfg) {
  const ChainLogLikelihood loglik = [&q](const Vector& theta, std::uint64_t, double) {
    try {
      const double j = q.objective(theta);
      return std::isfinite(j) ? -j : kNegInf;
    } catch (const Error&) {
      return kNegInf;
    }
  };
  return random_walk_metropolis(space, loglik, prior, proposal, start, cfg);
}

WeightedDraws lt_optimization(const QuasiLikelihood& q, const ParamSpace& space, const Prior& prior,
                              const ParamVector& theta0, const PerturbedSolveConfig& cfg, const Matrix* W) {
  const Index B = cfg.draws;
  const Index K = space.size();
  if (B < 1) throw Error(ErrorCode::InvalidArgument, "B must be at least 1");
  if (q.covariance.rows() != K) throw Error(ErrorCode::ShapeMismatch, "covariance does not match the parameter space");
  const Matrix root = psd_sqrt(q.covariance);
  const double inv_sqrt_n = 1.0 / std::sqrt(q.sample_size);

  Matrix draws(B, K);
  Vector logw(B);
  std::vector<DrawDiagnostics> diag(static_cast<std::size_t>(B));
  std::size_t failures = 0;
  const auto allowed = static_cast<std::size_t>(std::floor(cfg.max_failure_rate * static_cast<double>(B)));
  Vector z(K);

  for (Index b = 0; b < B; ++b) {
    DrawDiagnostics& d = diag[static_cast<std::size_t>(b)];
    bool done = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !done; ++attempt) {
      RandomStream rng = derive_stream(reverse_sampler_stream(cfg.seed, b, attempt));
      rng.fill_normal({z.data(), static_cast<std::size_t>(K)});
      const AuxVector target((root * z * inv_sqrt_n).eval());
      const SolveReport rep = solve_exact_identified(q.discrepancy, target, theta0, cfg.solver, W, true);
      d.attempts = attempt + 1;
      if (rep.status == SolveStatus::Converged) {
        draws.row(b) = rep.solution.values().transpose();
        d.jac_logdet = *rep.jac_logdet_abs;
        d.jac_sign = rep.jac_sign;
        const double lw = prior.log_density(rep.solution.values()) - d.jac_logdet;
        d.in_support = std::isfinite(lw);
        logw[b] = d.in_support ? lw : kNegInf;
        done = true;
      } else if (rep.status == SolveStatus::LeftSupport) {
        draws.row(b) = rep.solution.values().transpose();
        logw[b] = kNegInf;
        d.in_support = false;
        d.converged = false;
        d.jac_sign = 0;
        done = true;
      } else if (++failures > allowed) {
        throw Error(ErrorCode::TooManyFailures, "perturbed solve failures exceed the allowed rate");
      }
    }
    if (!done) throw Error(ErrorCode::TooManyFailures, "draw exhausted its replacement streams");
  }
  WeightedDraws out = WeightedDraws::from_log(space, std::move(draws), logw, std::move(diag));
  out.solver_failures = failures;
  return out;
}

QuasiLikelihood simulated_quasi_likelihood(const Model& model, const AuxVector& psi_hat, const Matrix& W,
                                           const Matrix& aux_cov, std::vector<InnovationSet> sims) {
  auto shared = std::make_shared<const std::vector<InnovationSet>>(std::move(sims));
  const VectorMap binding = simulated_binding(model, *shared);
  QuasiLikelihood q;
  q.weight = W;
  q.covariance = aux_cov;
  q.sample_size = model.sample_size();
  q.discrepancy = [shared, binding, target = psi_hat.values()](const Vector& theta) -> Vector {
    return target - binding(theta);
  };
  return q;
}

SeedSpec slt_simulation_seed(const SeedSpec& seed) { return seed.child(3); }

WeightedDraws slt_chain(const Model& model, const AuxVector& psi_hat, const Matrix& W, const Prior& prior,
                        const ProposalSpec& proposal, const ParamVector& start, const ChainConfig& cfg) {
  const QuasiLikelihood q = simulated_quasi_likelihood(
      model, psi_hat, W, Matrix::Zero(model.dim(), model.dim()),
      fixed_innovations(model, slt_simulation_seed(cfg.seed), cfg.simulations));
  WeightedDraws out = lt_chain(q, model.space(), prior, proposal, start, cfg);
  out.simulations = static_cast<std::size_t>(cfg.simulations);
  return out;
}

WeightedDraws slt_optimization(const Model& model, const AuxVector& psi_hat, const Matrix& aux_cov,
                               const Prior& prior, Index S, const ParamVector& theta0,
                               const PerturbedSolveConfig& cfg, const Matrix* W) {
  const Matrix weight = W != nullptr ? *W : Matrix(Matrix::Identity(model.dim(), model.dim()));
  const QuasiLikelihood q =
      simulated_quasi_likelihood(model, psi_hat, weight, aux_cov, fixed_innovations(model, slt_simulation_seed(cfg.seed), S));
  PerturbedSolveConfig perturb = cfg;
  perturb.seed = cfg.seed.child(4);
  WeightedDraws out = lt_optimization(q, model.space(), prior, theta0, perturb, W);
  out.simulations = static_cast<std::size_t>(S);
  return out;
}

}  // namespace simest
