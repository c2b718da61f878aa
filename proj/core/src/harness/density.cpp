#include "simest/harness/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "simest/core/error.hpp"

namespace simest {
namespace {

double trapezoid(const Vector& x, const Vector& y) {
  double acc = 0.0;
  for (Index i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

// Weighted quantile of (value, weight) pairs sorted by value.
double quantile(const std::vector<std::pair<double, double>>& sorted, double p) {
  double acc = 0.0;
  for (const auto& [x, w] : sorted) {
    acc += w;
    if (acc >= p) return x;
  }
  return sorted.back().first;
}

}  // namespace

double DensityGrid::integral() const { return trapezoid(grid, density); }

Vector linear_grid(double lo, double hi, Index points) {
  if (points < 2 || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "grid needs hi > lo and at least 2 points");
  return Vector::LinSpaced(points, lo, hi);
}

DensityGrid weighted_kde(const WeightedDraws& draws, Index component, const Vector& grid, std::string label,
                         double min_bandwidth) {
  const Vector& w = draws.norm_weights();
  const double n_eff = effective_sample_size(w);
  if (n_eff < 100.0) throw Error(ErrorCode::TooFewEffectiveDraws, "kernel density needs at least 100 effective draws");
  if (component < 0 || component >= draws.dim()) throw Error(ErrorCode::InvalidArgument, "component out of range");

  std::vector<std::pair<double, double>> pts;
  for (Index b = 0; b < draws.size(); ++b)
    if (w[b] > 0.0) pts.emplace_back(draws.draws()(b, component), w[b]);
  std::sort(pts.begin(), pts.end());
  double mean = 0.0;
  for (const auto& [x, wb] : pts) mean += wb * x;
  double var = 0.0;
  for (const auto& [x, wb] : pts) var += wb * (x - mean) * (x - mean);
  const double iqr = quantile(pts, 0.75) - quantile(pts, 0.25);
  double spread = std::sqrt(var);
  if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
  if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) spread = 0.0;  // rounding noise of a point mass
  const double h = std::max(0.9 * spread * std::pow(n_eff, -0.2), min_bandwidth);
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero bandwidth; set a bandwidth floor");

  Vector dens = Vector::Zero(grid.size());
  const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
  for (Index g = 0; g < grid.size(); ++g) {
    double acc = 0.0;
    for (const auto& [x, wb] : pts) {
      const double z = (grid[g] - x) / h;
      if (std::abs(z) < 10.0) acc += wb * std::exp(-0.5 * z * z);
    }
    dens[g] = norm * acc;
  }
  return DensityGrid{grid, dens, h, std::move(label)};
}

DensityGrid tabulate_density(const std::function<double(double)>& pdf, const Vector& grid, std::string label) {
  Vector dens(grid.size());
  for (Index g = 0; g < grid.size(); ++g) dens[g] = std::max(0.0, pdf(grid[g]));
  return DensityGrid{grid, dens, 0.0, std::move(label)};
}

double l1_distance(const DensityGrid& a, const DensityGrid& b) {
  if (a.grid.size() != b.grid.size() || a.grid != b.grid) throw Error(ErrorCode::GridMismatch, "densities use different grids");
  return trapezoid(a.grid, (a.density - b.density).cwiseAbs());
}

}  // namespace simest
