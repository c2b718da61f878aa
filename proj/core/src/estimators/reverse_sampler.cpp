#include "simest/estimators/reverse_sampler.hpp"

#include <cmath>
#include <limits>

#include "simest/core/error.hpp"

namespace simest {

SeedSpec reverse_sampler_stream(const SeedSpec& seed, Index b, int attempt) {
  return seed.child(static_cast<std::uint64_t>(b)).child(static_cast<std::uint64_t>(attempt));
}

WeightedDraws reverse_sampler(const Model& model, const AuxVector& psi_hat, const Prior& prior,
                              const ParamVector& theta0, const ReverseSamplerConfig& cfg, const Matrix* W) {
  const Index B = cfg.draws;
  if (B < 1) throw Error(ErrorCode::InvalidArgument, "B must be at least 1");
  const ParamSpace& space = model.space();
  Matrix draws(B, space.size());
  Vector logw(B);
  std::vector<DrawDiagnostics> diag(static_cast<std::size_t>(B));
  std::size_t failures = 0;
  const auto allowed = static_cast<std::size_t>(std::floor(cfg.max_failure_rate * static_cast<double>(B)));

  for (Index b = 0; b < B; ++b) {
    DrawDiagnostics& d = diag[static_cast<std::size_t>(b)];
    bool done = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !done; ++attempt) {
      const InnovationSet eps = model.simulate_innovations(reverse_sampler_stream(cfg.seed, b, attempt));
      const VectorMap psi_sim = [&model, &eps, &space](const Vector& theta) -> Vector {
        return model.simulate_aux(ParamVector(space, theta), eps).values();
      };
      const SolveReport rep = solve_exact_identified(psi_sim, psi_hat, theta0, cfg.solver, W, cfg.apply_jacobian);
      d.attempts = attempt + 1;
      if (rep.status == SolveStatus::Converged) {
        draws.row(b) = rep.solution.values().transpose();
        double lw = prior.log_density(rep.solution.values());
        if (cfg.apply_jacobian) {
          d.jac_logdet = *rep.jac_logdet_abs;
          d.jac_sign = rep.jac_sign;
          lw -= d.jac_logdet;
        }
        d.in_support = std::isfinite(lw);
        logw[b] = std::isfinite(lw) ? lw : -std::numeric_limits<double>::infinity();
        done = true;
      } else if (rep.status == SolveStatus::LeftSupport) {
        draws.row(b) = rep.solution.values().transpose();
        logw[b] = -std::numeric_limits<double>::infinity();
        d.in_support = false;
        d.converged = false;
        d.jac_sign = 0;
        done = true;
      } else {
        ++failures;
        if (failures > allowed)
          throw Error(ErrorCode::TooManyFailures, "reverse sampler solve failures exceed the allowed rate");
      }
    }
    if (!done) throw Error(ErrorCode::TooManyFailures, "draw exhausted its replacement streams");
  }
  WeightedDraws out = WeightedDraws::from_log(space, std::move(draws), logw, std::move(diag));
  out.solver_failures = failures;
  out.simulations = static_cast<std::size_t>(B) + failures;
  return out;
}

}  // namespace simest
