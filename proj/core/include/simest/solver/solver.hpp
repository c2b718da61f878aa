#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "simest/core/types.hpp"

namespace simest {

/// Map theta -> vector (simulated statistics or residuals). Innovations are
/// captured by the callable and held fixed. May throw; a throw counts as a
/// non-finite evaluation.
using VectorMap = std::function<Vector(const Vector&)>;

struct SolverConfig {
  double objective_tol = 1e-10;
  double param_tol = 1e-9;
  int max_iter = 200;
  double fd_step_rel = 1e-6;
  int restarts = 3;
  std::uint64_t restart_seed = 0x5eed;
};

enum class SolveStatus { Converged, NoConvergence, LeftSupport };

struct SolveReport {
  ParamVector solution;
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::NoConvergence;
  std::optional<Matrix> jacobian;
  std::optional<double> jac_logdet_abs;
  int jac_sign = 0;
};

/// Minimizes r(theta)' W r(theta) over the box of theta0's space.
/// Levenberg-Marquardt in unconstrained coordinates, Nelder-Mead on
/// stagnation, jittered restarts. Throws ObjectiveNaN if r is non-finite at
/// theta0 and at every restart point.
SolveReport minimize_J(const VectorMap& residual, const ParamVector& theta0, const Matrix& W,
                       const SolverConfig& cfg = {});

/// Finds theta with psi_sim(theta) == psi_hat. W (identity when null) only
/// shapes the path, not the solution. On success the report carries the
/// finite-difference Jacobian of psi_sim at the solution and its log |det|.
/// Failure is reported through status, not thrown.
SolveReport solve_exact_identified(const VectorMap& psi_sim, const AuxVector& psi_hat, const ParamVector& theta0,
                                   const SolverConfig& cfg = {}, const Matrix* W = nullptr,
                                   bool with_jacobian = true);

/// Central differences in the original coordinates, step
/// fd_step_rel * max(1, |theta_j|). Near a lower or upper bound the stencil
/// becomes one-sided (second order). Throws NonFiniteEntry.
Matrix jacobian_fd(const VectorMap& f, const ParamVector& theta, const SolverConfig& cfg = {});

struct SignedLogDet {
  double log_abs;  // -inf when singular
  int sign;        // 0 when singular
};

SignedLogDet signed_logdet(const Matrix& m);
double logabsdet(const Matrix& m);

/// Derivative-free simplex minimization of a scalar function on R^K.
struct NelderMeadResult {
  Vector x;
  double value;
  int evaluations;
};
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0, double initial_step,
                             int max_evaluations, double value_tol);

}  // namespace simest
