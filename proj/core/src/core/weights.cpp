#include "simest/core/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "simest/core/error.hpp"

namespace simest {
namespace {

// std::exp elementwise: Eigen's vectorized exp clamps large negative inputs
// to a denormal instead of returning 0.
Vector shifted_exp(const Vector& log_weights, double top) {
  return log_weights.unaryExpr([top](double v) { return std::exp(v - top); });
}

}  // namespace

Vector normalize_weights(const Vector& raw) {
  double total = 0.0;
  for (Index i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) throw Error(ErrorCode::NonFiniteWeight, "weight is not finite");
    if (raw[i] < 0.0) throw Error(ErrorCode::InvalidArgument, "weight is negative");
    total += raw[i];
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroWeights, "all weights are zero");
  return raw / total;
}

Vector normalize_log_weights(const Vector& log_weights) {
  double top = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < log_weights.size(); ++i) {
    const double v = log_weights[i];
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw Error(ErrorCode::NonFiniteWeight, "log weight is NaN or +inf");
    top = std::max(top, v);
  }
  if (!std::isfinite(top)) throw Error(ErrorCode::AllZeroWeights, "all weights are zero");
  return normalize_weights(shifted_exp(log_weights, top));
}

WeightedDraws::WeightedDraws(ParamSpace space, Matrix draws, Vector raw,
                             std::vector<DrawDiagnostics> diag)
    : space_(std::move(space)), draws_(std::move(draws)), raw_(std::move(raw)), diag_(std::move(diag)) {
  if (draws_.rows() == 0) throw Error(ErrorCode::EmptyDraws, "no draws");
  if (draws_.cols() != space_.size())
    throw Error(ErrorCode::ShapeMismatch, "draw dimension does not match parameter space");
  if (raw_.size() != draws_.rows()) throw Error(ErrorCode::ShapeMismatch, "one weight per draw required");
  if (diag_.empty()) diag_.resize(static_cast<std::size_t>(draws_.rows()));
  if (static_cast<Index>(diag_.size()) != draws_.rows())
    throw Error(ErrorCode::ShapeMismatch, "one diagnostic record per draw required");
  norm_ = normalize_weights(raw_);
}

WeightedDraws WeightedDraws::uniform(ParamSpace space, Matrix draws) {
  Vector raw = Vector::Ones(draws.rows());
  return WeightedDraws(std::move(space), std::move(draws), std::move(raw), {});
}

WeightedDraws WeightedDraws::from_raw(ParamSpace space, Matrix draws, Vector raw_weights,
                                      std::vector<DrawDiagnostics> diagnostics) {
  return WeightedDraws(std::move(space), std::move(draws), std::move(raw_weights), std::move(diagnostics));
}

WeightedDraws WeightedDraws::from_log(ParamSpace space, Matrix draws, const Vector& log_weights,
                                      std::vector<DrawDiagnostics> diagnostics) {
  if (log_weights.size() == 0) throw Error(ErrorCode::EmptyDraws, "no draws");
  normalize_log_weights(log_weights);  // validates
  const double top = log_weights.maxCoeff();
  Vector raw = shifted_exp(log_weights, top);
  return WeightedDraws(std::move(space), std::move(draws), std::move(raw), std::move(diagnostics));
}

ParamVector WeightedDraws::draw(Index b) const { return ParamVector(space_, draws_.row(b).transpose()); }

namespace {

// Weighted column sums skipping zero-weight rows, whose stored values may be
// placeholders for draws that left the support.
Vector weighted_sum(const Matrix& x, const Vector& w) {
  Vector acc = Vector::Zero(x.cols());
  for (Index b = 0; b < x.rows(); ++b)
    if (w[b] != 0.0) acc += w[b] * x.row(b).transpose();
  return acc;
}

}  // namespace

ParamVector weighted_mean(const WeightedDraws& w) {
  if (w.size() == 0) throw Error(ErrorCode::EmptyDraws, "no draws");
  // Dividing the raw-weighted sum keeps uniform weights bit-equal to the
  // arithmetic mean.
  Vector mean = weighted_sum(w.draws(), w.raw_weights()) / w.raw_weights().sum();
  const auto& sp = w.space();
  mean = mean.cwiseMax(sp.lower()).cwiseMin(sp.upper());
  return ParamVector(sp, std::move(mean));
}

Vector weighted_sd(const WeightedDraws& w) {
  if (w.size() == 0) throw Error(ErrorCode::EmptyDraws, "no draws");
  const Vector mean = weighted_sum(w.draws(), w.norm_weights());
  Vector var = Vector::Zero(w.dim());
  for (Index b = 0; b < w.size(); ++b) {
    const double wb = w.norm_weights()[b];
    if (wb == 0.0) continue;
    var += wb * (w.draws().row(b).transpose() - mean).array().square().matrix();
  }
  return var.cwiseSqrt();
}

double weighted_ecdf_distance(const WeightedDraws& w, Index component,
                              const std::function<double(double)>& cdf) {
  if (w.size() == 0) throw Error(ErrorCode::EmptyDraws, "no draws");
  if (component < 0 || component >= w.dim()) throw Error(ErrorCode::InvalidArgument, "component out of range");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(w.size()));
  for (Index b = 0; b < w.size(); ++b)
    if (w.norm_weights()[b] > 0.0) pts.emplace_back(w.draws()(b, component), w.norm_weights()[b]);
  std::sort(pts.begin(), pts.end());
  double below = 0.0;
  double dist = 0.0;
  for (std::size_t i = 0; i < pts.size();) {
    const double x = pts[i].first;
    double mass = 0.0;
    for (; i < pts.size() && pts[i].first == x; ++i) mass += pts[i].second;
    const double f = cdf(x);
    const double above = std::min(1.0, below + mass);
    dist = std::max({dist, std::abs(below - f), std::abs(above - f)});
    below = above;
  }
  return dist;
}

double effective_sample_size(const Vector& norm_weights) {
  const double s2 = norm_weights.squaredNorm();
  return s2 > 0.0 ? 1.0 / s2 : 0.0;
}

Vector weighted_mean_se(const WeightedDraws& w) {
  const Vector mean = weighted_sum(w.draws(), w.norm_weights());
  Vector acc = Vector::Zero(w.dim());
  for (Index b = 0; b < w.size(); ++b) {
    const double wb = w.norm_weights()[b];
    if (wb == 0.0) continue;
    acc += (wb * wb) * (w.draws().row(b).transpose() - mean).array().square().matrix();
  }
  return acc.cwiseSqrt();
}

Vector batch_means_se(const WeightedDraws& w, Index batches) {
  const Index n = w.size();
  if (batches <= 0) batches = std::max<Index>(2, static_cast<Index>(std::sqrt(static_cast<double>(n))));
  batches = std::min(batches, n);
  if (batches < 2) throw Error(ErrorCode::TooFewEffectiveDraws, "batch means need at least two draws");
  const Index len = n / batches;
  Matrix means(batches, w.dim());
  for (Index k = 0; k < batches; ++k)
    means.row(k) = w.draws().middleRows(k * len, len).colwise().mean();
  const Eigen::RowVectorXd grand = means.colwise().mean();
  const Matrix centered = means.rowwise() - grand;
  const Vector var = centered.array().square().colwise().sum().transpose() / static_cast<double>(batches - 1);
  return (var / static_cast<double>(batches)).cwiseSqrt();
}

}  // namespace simest
