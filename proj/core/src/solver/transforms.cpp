#include "simest/solver/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace simest {
namespace {

constexpr double kLogLimit = 30.0;
constexpr double kTanhLimit = 17.0;
constexpr double kInsideRel = 1e-12;

}  // namespace

BoxTransform::BoxTransform(const ParamSpace& space) : lower_(space.lower()), upper_(space.upper()) {
  kinds_.reserve(static_cast<std::size_t>(space.size()));
  for (Index j = 0; j < space.size(); ++j) {
    const bool lo = std::isfinite(lower_[j]);
    const bool hi = std::isfinite(upper_[j]);
    kinds_.push_back(lo && hi ? Kind::Interval : lo ? Kind::Lower : hi ? Kind::Upper : Kind::Free);
  }
}

double BoxTransform::limit(Kind k) const { return k == Kind::Interval ? kTanhLimit : kLogLimit; }

Vector BoxTransform::to_unconstrained(const Vector& theta) const {
  Vector u(theta.size());
  for (Index j = 0; j < theta.size(); ++j) {
    const double x = theta[j];
    switch (kinds_[static_cast<std::size_t>(j)]) {
      case Kind::Free: u[j] = x; break;
      case Kind::Lower: u[j] = std::log(std::max(x - lower_[j], kInsideRel * std::max(1.0, std::abs(x)))); break;
      case Kind::Upper: u[j] = std::log(std::max(upper_[j] - x, kInsideRel * std::max(1.0, std::abs(x)))); break;
      case Kind::Interval: {
        const double s = 2.0 * (x - lower_[j]) / (upper_[j] - lower_[j]) - 1.0;
        u[j] = std::atanh(std::clamp(s, -1.0 + 1e-12, 1.0 - 1e-12));
        break;
      }
    }
  }
  return u;
}

Vector BoxTransform::to_constrained(const Vector& u) const {
  Vector x(u.size());
  for (Index j = 0; j < u.size(); ++j) {
    switch (kinds_[static_cast<std::size_t>(j)]) {
      case Kind::Free: x[j] = u[j]; break;
      case Kind::Lower: x[j] = lower_[j] + std::exp(u[j]); break;
      case Kind::Upper: x[j] = upper_[j] - std::exp(u[j]); break;
      case Kind::Interval:
        x[j] = lower_[j] + 0.5 * (upper_[j] - lower_[j]) * (std::tanh(u[j]) + 1.0);
        break;
    }
  }
  return x;
}

Vector BoxTransform::derivative(const Vector& u) const {
  Vector d(u.size());
  for (Index j = 0; j < u.size(); ++j) {
    switch (kinds_[static_cast<std::size_t>(j)]) {
      case Kind::Free: d[j] = 1.0; break;
      case Kind::Lower: d[j] = std::exp(u[j]); break;
      case Kind::Upper: d[j] = -std::exp(u[j]); break;
      case Kind::Interval: {
        const double t = std::tanh(u[j]);
        d[j] = 0.5 * (upper_[j] - lower_[j]) * (1.0 - t * t);
        break;
      }
    }
  }
  return d;
}

bool BoxTransform::escaped(const Vector& u) const {
  for (Index j = 0; j < u.size(); ++j) {
    const Kind k = kinds_[static_cast<std::size_t>(j)];
    if (k != Kind::Free && std::abs(u[j]) > limit(k)) return true;
  }
  return false;
}

bool BoxTransform::near_escape(const Vector& u) const {
  for (Index j = 0; j < u.size(); ++j) {
    const Kind k = kinds_[static_cast<std::size_t>(j)];
    if (k != Kind::Free && std::abs(u[j]) > 0.8 * limit(k)) return true;
  }
  return false;
}

}  // namespace simest
