#pragma once

#include <functional>
#include <string>

#include "simest/core/types.hpp"

namespace simest {

/// Log prior density up to a constant; -inf outside the support.
class Prior {
 public:
  /// Indicator of the parameter box.
  static Prior flat(const ParamSpace& space);
  /// Indicator of a sub-box [lower, upper] of the space.
  static Prior flat_on(const ParamSpace& space, Vector lower, Vector upper);
  /// theta_j^{-alpha} on the box with theta_j > 0; alpha = 2 is the
  /// bias-reducing choice for a normal variance.
  static Prior power(const ParamSpace& space, Index coordinate, double alpha);

  double log_density(const Vector& theta) const { return log_density_(theta); }
  /// Central-difference gradient; diagnostics only.
  Vector log_gradient(const Vector& theta, double step = 1e-6) const;
  const std::string& description() const { return description_; }

 private:
  Prior(std::function<double(const Vector&)> f, std::string description)
      : log_density_(std::move(f)), description_(std::move(description)) {}
  std::function<double(const Vector&)> log_density_;
  std::string description_;
};

}  // namespace simest
