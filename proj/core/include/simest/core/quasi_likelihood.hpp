#pragma once

#include <functional>

#include "simest/core/types.hpp"

namespace simest {

/// Moment discrepancy g(theta) of a fixed dataset, zero at the minimum
/// distance point, together with its weighting and asymptotic covariance.
/// J(theta) = (n/2) g' W g is the Laplace-type log quasi-likelihood.
struct QuasiLikelihood {
  std::function<Vector(const Vector&)> discrepancy;
  Matrix weight;      // W
  Matrix covariance;  // asymptotic covariance of sqrt(n) g at the preliminary estimate
  double sample_size = 1.0;

  double objective(const Vector& theta) const {
    const Vector g = discrepancy(theta);
    return 0.5 * sample_size * g.dot(weight * g);
  }
};

}  // namespace simest
