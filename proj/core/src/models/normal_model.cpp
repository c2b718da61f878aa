#include "simest/models/normal_model.hpp"

#include <cmath>
#include <limits>

#include "simest/core/error.hpp"

namespace simest {

ParamSpace normal_space() {
  const double inf = std::numeric_limits<double>::infinity();
  return ParamSpace({"m", "sigma2"}, Vector{{-inf, 0.0}}, Vector{{inf, inf}});
}

AuxVector normal_aux_stats(const Vector& y) {
  if (y.size() < 2) throw Error(ErrorCode::InvalidArgument, "normal sample needs T >= 2");
  const double mean = y.mean();
  const double var = (y.array() - mean).square().mean();
  if (!(var > 0.0)) throw Error(ErrorCode::DegenerateSample, "sample variance is zero");
  return AuxVector(Vector{{mean, var}});
}

ParamVector normal_exact_solve(const AuxVector& psi_hat, const InnovationSet& eps) {
  const Vector& e = eps.shocks;
  const double ebar = e.mean();
  const double scale = (e.array() - ebar).square().mean();
  if (!(scale > 0.0)) throw Error(ErrorCode::DegenerateInnovations, "innovations have zero variance");
  const double sigma2 = psi_hat[1] / scale;
  const double m = psi_hat[0] - std::sqrt(sigma2) * ebar;
  return ParamVector(normal_space(), Vector{{m, sigma2}});
}

NormalModel::NormalModel(Index T, double m, double sigma2)
    : T_(T), truth_(normal_space(), Vector{{m, sigma2}}) {
  if (T < 6) throw Error(ErrorCode::InvalidArgument, "normal model needs T >= 6");
  if (!(sigma2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma2 must be positive");
}

InnovationSet NormalModel::simulate_innovations(const SeedSpec& seed) const {
  RandomStream rng = derive_stream(seed);
  InnovationSet eps;
  eps.shocks.resize(T_);
  rng.fill_normal({eps.shocks.data(), static_cast<std::size_t>(T_)});
  return eps;
}

Dataset NormalModel::simulate_data(const ParamVector& theta, const InnovationSet& eps) const {
  if (eps.shocks.size() != T_) throw Error(ErrorCode::ShapeMismatch, "innovation length differs from T");
  return NormalData{(theta[0] + std::sqrt(theta[1]) * eps.shocks.array()).matrix()};
}

AuxVector NormalModel::aux_stats(const Dataset& data) const {
  const auto* d = std::get_if<NormalData>(&data);
  if (d == nullptr || d->y.size() != T_) throw Error(ErrorCode::ShapeMismatch, "expected a normal sample of length T");
  return normal_aux_stats(d->y);
}

AuxVector NormalModel::simulate_aux(const ParamVector& theta, const InnovationSet& eps) const {
  if (eps.shocks.size() != T_) throw Error(ErrorCode::ShapeMismatch, "innovation length differs from T");
  const double sigma = std::sqrt(theta[1]);
  const double ebar = eps.shocks.mean();
  const double scale = (eps.shocks.array() - ebar).square().mean();
  if (!(theta[1] * scale > 0.0)) throw Error(ErrorCode::DegenerateSample, "simulated variance is zero");
  return AuxVector(Vector{{theta[0] + sigma * ebar, theta[1] * scale}});
}

Matrix NormalModel::aux_covariance(const Dataset& data) const {
  const double s2 = aux_stats(data)[1];
  return Vector{{s2, 2.0 * s2 * s2}}.asDiagonal();
}

Matrix NormalModel::distance_weighting(const Dataset& data) const { return aux_covariance(data).inverse(); }

QuasiLikelihood NormalModel::quasi_likelihood(const Dataset& data) const {
  // LT uses the large-sample binding psi(theta) = theta.
  const Vector psi = aux_stats(data).values();
  QuasiLikelihood q;
  q.covariance = aux_covariance(data);
  q.weight = q.covariance.inverse();
  q.sample_size = static_cast<double>(T_);
  q.discrepancy = [psi](const Vector& theta) -> Vector { return psi - theta; };
  return q;
}

std::optional<AuxVector> NormalModel::analytic_binding(const ParamVector& theta) const {
  const double T = static_cast<double>(T_);
  return AuxVector(Vector{{theta[0], theta[1] * (T - 1.0) / T}});
}

std::optional<Matrix> NormalModel::analytic_jacobian(const ParamVector&) const {
  const double T = static_cast<double>(T_);
  return Matrix(Vector{{1.0, (T - 1.0) / T}}.asDiagonal());
}

std::optional<ParamVector> NormalModel::md_from_aux(const AuxVector& psi) const {
  const double T = static_cast<double>(T_);
  return ParamVector(space(), Vector{{psi[0], psi[1] * T / (T - 1.0)}});
}

ParamVector NormalModel::aux_as_estimate(const AuxVector& psi) const { return ParamVector(space(), psi.values()); }

}  // namespace simest
