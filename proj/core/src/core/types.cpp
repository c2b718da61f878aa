#include "simest/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simest/core/error.hpp"

namespace simest {

ParamSpace::ParamSpace(std::vector<std::string> names, Vector lower, Vector upper)
    : names_(std::move(names)), lower_(std::move(lower)), upper_(std::move(upper)) {
  const auto k = static_cast<Index>(names_.size());
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "parameter space needs K >= 1");
  if (lower_.size() != k || upper_.size() != k)
    throw Error(ErrorCode::ShapeMismatch, "bounds length differs from the number of names");
  for (Index j = 0; j < k; ++j) {
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] >= upper_[j])
      throw Error(ErrorCode::InvalidArgument, "invalid bounds for " + names_[j]);
  }
}

ParamSpace ParamSpace::unbounded(std::vector<std::string> names) {
  const auto k = static_cast<Index>(names.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  return ParamSpace(std::move(names), Vector::Constant(k, -inf), Vector::Constant(k, inf));
}

bool ParamSpace::contains(const Vector& theta) const {
  if (theta.size() != size()) return false;
  for (Index j = 0; j < size(); ++j) {
    if (!std::isfinite(theta[j]) || theta[j] < lower_[j] || theta[j] > upper_[j]) return false;
  }
  return true;
}

bool ParamSpace::interior(const Vector& theta) const {
  if (theta.size() != size()) return false;
  for (Index j = 0; j < size(); ++j) {
    if (!std::isfinite(theta[j]) || theta[j] <= lower_[j] || theta[j] >= upper_[j]) return false;
  }
  return true;
}

Index ParamSpace::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorCode::InvalidArgument, "unknown parameter " + name);
  return static_cast<Index>(it - names_.begin());
}

ParamVector::ParamVector(ParamSpace space, Vector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw Error(ErrorCode::ShapeMismatch, "parameter vector length differs from its space");
  if (!space_.contains(values_))
    throw Error(ErrorCode::InvalidArgument, "parameter values non-finite or outside bounds");
}

AuxVector::AuxVector(Vector values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "auxiliary statistics must be finite");
}

}  // namespace simest
