#pragma once

#include <vector>

#include "simest/core/types.hpp"

namespace simest {

/// Coordinatewise map between a box and R^K: identity for free coordinates,
/// log for half-bounded ones and a scaled tanh for finite intervals.
class BoxTransform {
 public:
  explicit BoxTransform(const ParamSpace& space);

  /// Points on or beyond a bound are pulled just inside first.
  Vector to_unconstrained(const Vector& theta) const;
  Vector to_constrained(const Vector& u) const;
  /// d theta_j / d u_j.
  Vector derivative(const Vector& u) const;
  /// True when some coordinate has run so far out that the mapped value
  /// sits on a bound in double precision.
  bool escaped(const Vector& u) const;
  /// Like escaped but with a safety margin; used to classify failed solves.
  bool near_escape(const Vector& u) const;

 private:
  enum class Kind { Free, Lower, Upper, Interval };
  std::vector<Kind> kinds_;
  Vector lower_, upper_;
  double limit(Kind k) const;
};

}  // namespace simest
