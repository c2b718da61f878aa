#pragma once

#include <functional>
#include <string>

#include "simest/core/weights.hpp"

namespace simest {

struct DensityGrid {
  Vector grid;
  Vector density;
  double bandwidth = 0.0;  // 0 for analytic curves
  std::string label;

  /// Trapezoid rule over the grid.
  double integral() const;
};

Vector linear_grid(double lo, double hi, Index points);

/// Weighted Gaussian-kernel density of one component. Bandwidth is
/// Silverman's rule with the effective sample size, floored at
/// min_bandwidth. Throws TooFewEffectiveDraws below 100 effective draws.
DensityGrid weighted_kde(const WeightedDraws& draws, Index component, const Vector& grid, std::string label = "",
                         double min_bandwidth = 0.0);

/// Tabulates an analytic density.
DensityGrid tabulate_density(const std::function<double(double)>& pdf, const Vector& grid, std::string label);

/// Trapezoid L1 distance between two densities on the same grid. Throws GridMismatch.
double l1_distance(const DensityGrid& a, const DensityGrid& b);

}  // namespace simest
