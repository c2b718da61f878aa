#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "simest/core/types.hpp"

namespace simest {

/// Scales nonnegative finite weights to sum to one.
/// Throws AllZeroWeights or NonFiniteWeight.
Vector normalize_weights(const Vector& raw);

/// Same, from log weights. Subtracts the maximum before exponentiating so
/// Jacobian determinants spanning many orders of magnitude do not overflow.
/// -inf entries are zero weights.
Vector normalize_log_weights(const Vector& log_weights);

struct DrawDiagnostics {
  bool converged = true;
  bool in_support = true;
  double jac_logdet = 0.0;  // log|det| of the solve Jacobian, 0 when not applicable
  int jac_sign = 1;         // sign of det; sign changes across draws hint at non-injectivity
  int attempts = 1;         // innovation streams consumed to obtain the draw
};

/// B posterior draws with importance weights and per-draw diagnostics.
/// Draws are stored row-wise in a B x K matrix.
class WeightedDraws {
 public:
  /// Equal weights, as produced by MH chains.
  static WeightedDraws uniform(ParamSpace space, Matrix draws);
  static WeightedDraws from_raw(ParamSpace space, Matrix draws, Vector raw_weights,
                                std::vector<DrawDiagnostics> diagnostics = {});
  /// raw_weights are stored as exp(log_w - max log_w).
  static WeightedDraws from_log(ParamSpace space, Matrix draws, const Vector& log_weights,
                                std::vector<DrawDiagnostics> diagnostics = {});

  const ParamSpace& space() const { return space_; }
  const Matrix& draws() const { return draws_; }
  Index size() const { return draws_.rows(); }
  Index dim() const { return draws_.cols(); }
  ParamVector draw(Index b) const;

  const Vector& raw_weights() const { return raw_; }
  const Vector& norm_weights() const { return norm_; }
  const std::vector<DrawDiagnostics>& diagnostics() const { return diag_; }

  double acceptance_rate = 1.0;
  std::size_t solver_failures = 0;
  std::size_t simulations = 0;

 private:
  WeightedDraws(ParamSpace space, Matrix draws, Vector raw, std::vector<DrawDiagnostics> diag);

  ParamSpace space_;
  Matrix draws_;
  Vector raw_;
  Vector norm_;
  std::vector<DrawDiagnostics> diag_;
};

ParamVector weighted_mean(const WeightedDraws& w);
Vector weighted_sd(const WeightedDraws& w);

/// Sup distance between the weighted ECDF of one component and cdf, taken over
/// both one-sided limits at every jump.
double weighted_ecdf_distance(const WeightedDraws& w, Index component,
                              const std::function<double(double)>& cdf);

/// 1 / sum of squared normalized weights.
double effective_sample_size(const Vector& norm_weights);

/// Standard error of the weighted mean for independent draws (delta method
/// for self-normalized importance sampling).
Vector weighted_mean_se(const WeightedDraws& w);

/// Batch-means standard error of the mean for autocorrelated chain output.
Vector batch_means_se(const WeightedDraws& w, Index batches = 0);

}  // namespace simest
