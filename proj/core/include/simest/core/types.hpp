#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace simest {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Names and box bounds of a structural parameter vector. Bounds may be
/// infinite. Shared by models, priors and every estimator output.
class ParamSpace {
 public:
  ParamSpace() = default;
  ParamSpace(std::vector<std::string> names, Vector lower, Vector upper);

  /// Unbounded space with the given names.
  static ParamSpace unbounded(std::vector<std::string> names);

  Index size() const { return static_cast<Index>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(const Vector& theta) const;
  /// Strict interior; solves and finite differences need this.
  bool interior(const Vector& theta) const;
  Index index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  Vector lower_;
  Vector upper_;
};

/// Structural parameters theta with names and bounds. Values are finite and
/// inside the bounds; the constructor throws InvalidArgument otherwise.
class ParamVector {
 public:
  ParamVector(ParamSpace space, Vector values);

  const ParamSpace& space() const { return space_; }
  const Vector& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }
  const std::vector<std::string>& names() const { return space_.names(); }

  ParamVector with_values(Vector values) const { return ParamVector(space_, std::move(values)); }

 private:
  ParamSpace space_;
  Vector values_;
};

/// Auxiliary statistics psi-hat. Always finite.
class AuxVector {
 public:
  AuxVector() = default;
  explicit AuxVector(Vector values);

  const Vector& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

 private:
  Vector values_;
};

struct EstimateSummary {
  ParamVector point;
  Vector spread;  // posterior or frequentist SD, elementwise >= 0
  std::string estimator;
  std::size_t draws = 0;        // B
  std::size_t simulations = 0;  // S
  double acceptance_rate = 1.0;
  std::size_t solver_failures = 0;
};

}  // namespace simest
