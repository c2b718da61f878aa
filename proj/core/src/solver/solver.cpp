#include "simest/solver/solver.hpp"

#include <cmath>
#include <limits>

#include "simest/core/error.hpp"
#include "simest/core/random.hpp"
#include "simest/solver/transforms.hpp"

namespace simest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Eval {
  Vector r;
  double f = kInf;
};

class Problem {
 public:
  Problem(const VectorMap& residual, const ParamSpace& space, const Matrix& W)
      : residual_(residual), map_(space), W_(W) {}

  const BoxTransform& map() const { return map_; }

  Eval at(const Vector& u) const {
    Eval e;
    if (map_.escaped(u)) return e;
    try {
      e.r = residual_(map_.to_constrained(u));
    } catch (const std::exception&) {
      return e;
    }
    if (!e.r.allFinite()) return e;
    if (W_.size() == 0) {
      e.f = e.r.squaredNorm();
    } else {
      if (W_.rows() != e.r.size()) throw Error(ErrorCode::ShapeMismatch, "weighting matrix does not match residual");
      e.f = e.r.dot(W_ * e.r);
    }
    return e;
  }

  double weighted_norm(const Vector& r, const Vector& s) const { return W_.size() == 0 ? r.dot(s) : r.dot(W_ * s); }
  Matrix weight(Index L) const { return W_.size() == 0 ? Matrix(Matrix::Identity(L, L)) : W_; }

 private:
  const VectorMap& residual_;
  BoxTransform map_;
  Matrix W_;
};

struct Attempt {
  Vector u;
  Eval best;
  int iterations = 0;
  bool converged = false;
};

// Jacobian of the residual in unconstrained coordinates.
bool jacobian_u(const Problem& p, const Vector& u, const Eval& here, double step, Matrix& jac) {
  const Index K = u.size();
  jac.resize(here.r.size(), K);
  for (Index j = 0; j < K; ++j) {
    const double h = step * std::max(1.0, std::abs(u[j]));
    Vector a = u, b = u;
    a[j] += h;
    b[j] -= h;
    const Eval ea = p.at(a);
    const Eval eb = p.at(b);
    if (std::isfinite(ea.f) && std::isfinite(eb.f)) {
      jac.col(j) = (ea.r - eb.r) / (2.0 * h);
    } else if (std::isfinite(ea.f)) {
      jac.col(j) = (ea.r - here.r) / h;
    } else if (std::isfinite(eb.f)) {
      jac.col(j) = (here.r - eb.r) / h;
    } else {
      return false;
    }
  }
  return jac.allFinite();
}

Attempt levenberg_marquardt(const Problem& p, Vector u, Eval here, const SolverConfig& cfg) {
  Attempt out{u, here, 0, false};
  if (here.f == 0.0) {
    out.converged = true;
    return out;
  }
  const Matrix W = p.weight(here.r.size());
  double lambda = 1e-3;
  Matrix jac;
  for (int it = 0; it < cfg.max_iter; ++it) {
    out.iterations = it + 1;
    if (!jacobian_u(p, u, here, cfg.fd_step_rel, jac)) break;
    const Matrix A = jac.transpose() * W * jac;
    const Vector g = jac.transpose() * W * here.r;
    bool accepted = false;
    Vector step;
    while (lambda < 1e12) {
      Matrix M = A;
      M.diagonal() += lambda * (A.diagonal().cwiseMax(1e-12));
      step = M.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Vector cand = u + step;
      const Eval e = p.at(cand);
      if (e.f < here.f) {
        u = cand;
        here = e;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        break;
      }
      if (here.f <= cfg.objective_tol) break;  // at the rounding floor
      lambda *= 10.0;
    }
    out.u = u;
    out.best = here;
    if (here.f <= cfg.objective_tol) {
      const double scale = 1.0 + u.cwiseAbs().maxCoeff();
      if (!accepted || here.f == 0.0 || step.cwiseAbs().maxCoeff() <= cfg.param_tol * scale) {
        out.converged = true;
        return out;
      }
    } else if (!accepted) {
      break;  // stagnated
    }
  }
  out.converged = out.best.f <= cfg.objective_tol;
  return out;
}

Attempt solve_from(const Problem& p, const Vector& u0, const SolverConfig& cfg) {
  Eval start = p.at(u0);
  if (!std::isfinite(start.f)) return {u0, start, 0, false};
  Attempt a = levenberg_marquardt(p, u0, start, cfg);
  if (a.converged || p.map().near_escape(a.u)) return a;
  // derivative-free fallback, then polish
  const auto obj = [&p](const Vector& u) { return p.at(u).f; };
  const NelderMeadResult nm = nelder_mead(obj, a.u, 0.1, 200 * static_cast<int>(u0.size() + 1), cfg.objective_tol);
  const Eval e = p.at(nm.x);
  if (std::isfinite(e.f) && e.f < a.best.f) {
    Attempt b = levenberg_marquardt(p, nm.x, e, cfg);
    b.iterations += a.iterations;
    return b.best.f <= a.best.f ? b : a;
  }
  return a;
}

Vector jitter(const Vector& theta, RandomStream& rng) {
  Vector out = theta;
  for (Index j = 0; j < out.size(); ++j) {
    const double scale = theta[j] != 0.0 ? std::abs(theta[j]) : 1.0;
    out[j] += 0.1 * scale * rng.normal();
  }
  return out;
}

SolveReport run(const VectorMap& residual, const ParamVector& theta0, const Matrix& W, const SolverConfig& cfg,
                bool throw_on_nan) {
  const ParamSpace& space = theta0.space();
  const Problem p(residual, space, W);
  RandomStream rng(stream_key(SeedSpec{cfg.restart_seed, 0}));

  Attempt best;
  bool any_finite = false;
  int total_iter = 0;
  for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
    const Vector start = attempt == 0 ? theta0.values() : jitter(theta0.values(), rng);
    const Vector u0 = p.map().to_unconstrained(start.cwiseMax(space.lower()).cwiseMin(space.upper()));
    Attempt a = solve_from(p, u0, cfg);
    total_iter += a.iterations;
    if (std::isfinite(a.best.f)) {
      any_finite = true;
      if (best.u.size() == 0 || a.best.f < best.best.f) best = a;
    }
    if (a.converged) {
      best = a;
      break;
    }
    // restarts from the same neighbourhood run off the same way
    if (std::isfinite(a.best.f) && p.map().near_escape(a.u)) break;
  }
  if (!any_finite) {
    if (throw_on_nan) throw Error(ErrorCode::ObjectiveNaN, "objective is not finite at the start point or any restart");
    SolveReport rep{theta0, kInf, total_iter, false, SolveStatus::NoConvergence, {}, {}, 0};
    return rep;
  }
  const Vector theta = p.map().to_constrained(best.u).cwiseMax(space.lower()).cwiseMin(space.upper());
  SolveReport rep{ParamVector(space, theta), best.best.f, total_iter, best.converged,
                  best.converged ? SolveStatus::Converged : SolveStatus::NoConvergence, {}, {}, 0};
  if (!best.converged && p.map().near_escape(best.u)) rep.status = SolveStatus::LeftSupport;
  return rep;
}

}  // namespace

SolveReport minimize_J(const VectorMap& residual, const ParamVector& theta0, const Matrix& W, const SolverConfig& cfg) {
  return run(residual, theta0, W, cfg, true);
}

SolveReport solve_exact_identified(const VectorMap& psi_sim, const AuxVector& psi_hat, const ParamVector& theta0,
                                   const SolverConfig& cfg, const Matrix* W, bool with_jacobian) {
  if (psi_hat.size() != theta0.size()) throw Error(ErrorCode::ShapeMismatch, "exact identification needs L = K");
  const Vector target = psi_hat.values();
  const VectorMap residual = [&psi_sim, &target](const Vector& theta) -> Vector { return psi_sim(theta) - target; };
  SolveReport rep = run(residual, theta0, W != nullptr ? *W : Matrix(), cfg, false);
  if (rep.converged && with_jacobian) {
    try {
      rep.jacobian = jacobian_fd(psi_sim, rep.solution, cfg);
      const SignedLogDet ld = signed_logdet(*rep.jacobian);
      rep.jac_logdet_abs = ld.log_abs;
      rep.jac_sign = ld.sign;
    } catch (const Error&) {
      rep.converged = false;
      rep.status = SolveStatus::NoConvergence;
    }
  }
  return rep;
}

}  // namespace simest
