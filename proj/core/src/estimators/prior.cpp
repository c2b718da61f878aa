#include "simest/estimators/prior.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "simest/core/error.hpp"

namespace simest {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool inside(const Vector& theta, const Vector& lo, const Vector& hi) {
  return theta.size() == lo.size() && theta.allFinite() && (theta.array() >= lo.array()).all() &&
         (theta.array() <= hi.array()).all();
}

}  // namespace

Prior Prior::flat(const ParamSpace& space) {
  return Prior([lo = space.lower(), hi = space.upper()](const Vector& t) { return inside(t, lo, hi) ? 0.0 : kNegInf; },
               "flat");
}

Prior Prior::flat_on(const ParamSpace& space, Vector lower, Vector upper) {
  if (lower.size() != space.size() || upper.size() != space.size())
    throw Error(ErrorCode::ShapeMismatch, "prior box does not match the parameter space");
  lower = lower.cwiseMax(space.lower());
  upper = upper.cwiseMin(space.upper());
  if (!(lower.array() < upper.array()).all()) throw Error(ErrorCode::InvalidArgument, "empty prior box");
  return Prior([lo = std::move(lower), hi = std::move(upper)](const Vector& t) { return inside(t, lo, hi) ? 0.0 : kNegInf; },
               "flat_box");
}

Prior Prior::power(const ParamSpace& space, Index coordinate, double alpha) {
  if (coordinate < 0 || coordinate >= space.size()) throw Error(ErrorCode::InvalidArgument, "prior coordinate out of range");
  if (!std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "prior exponent must be finite");
  return Prior(
      [lo = space.lower(), hi = space.upper(), coordinate, alpha](const Vector& t) {
        if (!inside(t, lo, hi) || !(t[coordinate] > 0.0)) return kNegInf;
        return -alpha * std::log(t[coordinate]);
      },
      fmt::format("power(alpha={})", alpha));
}

Vector Prior::log_gradient(const Vector& theta, double step) const {
  Vector g(theta.size());
  for (Index j = 0; j < theta.size(); ++j) {
    const double h = step * std::max(1.0, std::abs(theta[j]));
    Vector a = theta, b = theta;
    a[j] += h;
    b[j] -= h;
    g[j] = (log_density(a) - log_density(b)) / (2.0 * h);
  }
  return g;
}

}  // namespace simest
