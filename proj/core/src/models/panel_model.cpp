#include "simest/models/panel_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "simest/core/error.hpp"

namespace simest {
namespace {

struct Within {
  Matrix y, ylag, x;  // each N x T, demeaned per unit
};

const PanelData& as_panel(const Dataset& data) {
  const auto* d = std::get_if<PanelData>(&data);
  if (d == nullptr) throw Error(ErrorCode::ShapeMismatch, "expected panel data");
  return *d;
}

void check_shape(const PanelData& d) {
  if (d.x.rows() != d.y.rows() || d.x.cols() != d.y.cols() || d.y0.size() != d.y.rows() || d.y.cols() < 2)
    throw Error(ErrorCode::ShapeMismatch, "inconsistent panel dimensions");
}

Matrix demean_rows(const Matrix& m) { return m.colwise() - m.rowwise().mean(); }

Within within(const PanelData& d) {
  check_shape(d);
  const Index T = d.periods();
  Matrix lag(d.units(), T);
  lag.col(0) = d.y0;
  lag.rightCols(T - 1) = d.y.leftCols(T - 1);
  return {demean_rows(d.y), demean_rows(lag), demean_rows(d.x)};
}

double within_factor(Index T) { return 1.0 - 1.0 / static_cast<double>(T); }

}  // namespace

ParamSpace panel_space() {
  const double inf = std::numeric_limits<double>::infinity();
  return ParamSpace({"rho", "beta", "sigma2"}, Vector{{-1.0, -inf, 0.0}}, Vector{{1.0, inf, inf}});
}

PanelData panel_simulate(const PanelDesign& design, const ParamVector& theta, const InnovationSet& eps,
                         const Matrix* fixed_x) {
  const Index N = design.units;
  const Index T = design.periods;
  const Index span = design.burn_in + T;
  if (eps.shocks.size() != N * span || eps.regressors.size() != N * span || eps.effects.size() != N)
    throw Error(ErrorCode::ShapeMismatch, "innovations do not match the panel design");
  if (fixed_x != nullptr && (fixed_x->rows() != N || fixed_x->cols() != T))
    throw Error(ErrorCode::ShapeMismatch, "fixed regressors do not match the panel design");
  const double rho = theta[0];
  const double beta = theta[1];
  const double sigma = std::sqrt(theta[2]);

  PanelData out{Matrix(N, T), Matrix(N, T), Vector(N)};
  for (Index i = 0; i < N; ++i) {
    const double* e = eps.shocks.data() + i * span;
    const double* xr = eps.regressors.data() + i * span;
    const double alpha = eps.effects[i];
    double y = 0.0;
    for (Index k = 0; k < span; ++k) {
      if (k == design.burn_in) out.y0[i] = y;
      const Index t = k - design.burn_in;
      const double x = (t >= 0 && fixed_x != nullptr) ? (*fixed_x)(i, t) : xr[k];
      y = alpha + rho * y + beta * x + sigma * e[k];
      if (t >= 0) {
        out.y(i, t) = y;
        out.x(i, t) = x;
      }
    }
  }
  return out;
}

Matrix panel_moment_contributions(const ParamVector& theta, const PanelData& data) {
  const Within w = within(data);
  const Index N = data.units();
  const Index T = data.periods();
  const Matrix u = w.y - theta[0] * w.ylag - theta[1] * w.x;
  const double centre = theta[2] * within_factor(T);
  Matrix g(N * T, 3);
  for (Index i = 0; i < N; ++i)
    for (Index t = 0; t < T; ++t) {
      const Index r = i * T + t;
      g(r, 0) = w.ylag(i, t) * u(i, t);
      g(r, 1) = w.x(i, t) * u(i, t);
      g(r, 2) = u(i, t) * u(i, t) - centre;
    }
  return g;
}

AuxVector panel_moments(const ParamVector& theta, const PanelData& data) {
  const Within w = within(data);
  const Matrix u = w.y - theta[0] * w.ylag - theta[1] * w.x;
  return AuxVector(Vector{{w.ylag.cwiseProduct(u).mean(), w.x.cwiseProduct(u).mean(),
                           u.squaredNorm() / static_cast<double>(u.size()) - theta[2] * within_factor(data.periods())}});
}

Matrix panel_moment_jacobian(const ParamVector& theta, const PanelData& data) {
  const Within w = within(data);
  const Matrix u = w.y - theta[0] * w.ylag - theta[1] * w.x;
  const double n = static_cast<double>(u.size());
  const double ll = w.ylag.squaredNorm() / n;
  const double lx = w.ylag.cwiseProduct(w.x).sum() / n;
  const double xx = w.x.squaredNorm() / n;
  Matrix G(3, 3);
  G << -ll, -lx, 0.0,
       -lx, -xx, 0.0,
       -2.0 * u.cwiseProduct(w.ylag).sum() / n, -2.0 * u.cwiseProduct(w.x).sum() / n, -within_factor(data.periods());
  return G;
}

ParamVector panel_lsdv(const PanelData& data) {
  const Within w = within(data);
  const double a11 = w.ylag.squaredNorm();
  const double a12 = w.ylag.cwiseProduct(w.x).sum();
  const double a22 = w.x.squaredNorm();
  const double b1 = w.ylag.cwiseProduct(w.y).sum();
  const double b2 = w.x.cwiseProduct(w.y).sum();
  const double det = a11 * a22 - a12 * a12;
  if (!(det > 1e-12 * a11 * a22) || !std::isfinite(det))
    throw Error(ErrorCode::SingularDesign, "within-transformed regressors are collinear");
  const double rho = (a22 * b1 - a12 * b2) / det;
  const double beta = (a11 * b2 - a12 * b1) / det;
  const Matrix u = w.y - rho * w.ylag - beta * w.x;
  const double sigma2 = u.squaredNorm() / (static_cast<double>(u.size()) * within_factor(data.periods()));
  // rho outside [-1, 1] is representable in the statistics but not in the
  // parameter box; keep it as an auxiliary value via an unbounded space.
  ParamSpace sp = panel_space();
  Vector vals{{rho, beta, sigma2}};
  if (!sp.contains(vals)) sp = ParamSpace::unbounded(sp.names());
  return ParamVector(std::move(sp), std::move(vals));
}

Matrix panel_weighting_matrix(const PanelData& data, const ParamVector& theta) {
  const Matrix g = panel_moment_contributions(theta, data);
  const double n = static_cast<double>(g.rows());
  const Eigen::RowVectorXd gbar = g.colwise().mean();
  const Matrix inner = (g.transpose() * g) / n - gbar.transpose() * gbar;
  Eigen::LDLT<Matrix> ldlt(inner);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 1e-14 * ldlt.vectorD().maxCoeff())
    throw Error(ErrorCode::SingularCovariance, "moment covariance is singular");
  return ldlt.solve(Matrix::Identity(3, 3));
}

Matrix demeaning_basis(Index periods) {
  // Helmert rows: row k contrasts the first k+1 periods with period k+2.
  Matrix q = Matrix::Zero(periods - 1, periods);
  for (Index k = 0; k < periods - 1; ++k) {
    const double len = static_cast<double>(k + 1);
    const double norm = std::sqrt(len * (len + 1.0));
    q.row(k).head(k + 1).setConstant(1.0 / norm);
    q(k, k + 1) = -len / norm;
  }
  return q;
}

double panel_exact_loglik(const ParamVector& theta, const PanelData& data) {
  check_shape(data);
  const double sigma2 = theta[2];
  if (!(sigma2 > 0.0)) throw Error(ErrorCode::NonPositiveVariance, "sigma2 must be positive");
  const Index N = data.units();
  const Index T = data.periods();
  Matrix lag(N, T);
  lag.col(0) = data.y0;
  lag.rightCols(T - 1) = data.y.leftCols(T - 1);
  const Matrix u = data.y - theta[0] * lag - theta[1] * data.x;  // N x T, effects included
  const Matrix z = u * demeaning_basis(T).transpose();            // effects drop out
  const double dim = static_cast<double>(N * (T - 1));
  return -0.5 * dim * std::log(2.0 * std::numbers::pi * sigma2) - z.squaredNorm() / (2.0 * sigma2);
}

DynamicPanelModel::DynamicPanelModel(PanelDesign design)
    : design_(design), truth_(panel_space(), Vector{{design.rho, design.beta, design.sigma2}}) {
  if (!(std::abs(design.rho) < 1.0)) throw Error(ErrorCode::InvalidArgument, "|rho| must be below 1");
  if (!(design.sigma2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma2 must be positive");
  if (design.periods < 2 || design.units < 1 || design.units * (design.periods - 1) <= 3)
    throw Error(ErrorCode::InvalidArgument, "panel too small");
  if (design.burn_in < 0) throw Error(ErrorCode::InvalidArgument, "burn_in must be nonnegative");
}

DynamicPanelModel DynamicPanelModel::conditional_on(const Matrix& x) const {
  if (x.rows() != design_.units || x.cols() != design_.periods)
    throw Error(ErrorCode::ShapeMismatch, "regressor matrix does not match the panel design");
  DynamicPanelModel out = *this;
  out.fixed_x_ = x;
  return out;
}

double DynamicPanelModel::sample_size() const {
  return static_cast<double>(design_.units * design_.periods);
}

InnovationSet DynamicPanelModel::simulate_innovations(const SeedSpec& seed) const {
  const Index N = design_.units;
  const Index span = design_.burn_in + design_.periods;
  RandomStream rng = derive_stream(seed);
  InnovationSet eps;
  eps.shocks.resize(N * span);
  eps.regressors.resize(N * span);
  eps.effects.resize(N);
  rng.fill_normal({eps.shocks.data(), static_cast<std::size_t>(N * span)});
  rng.fill_normal({eps.regressors.data(), static_cast<std::size_t>(N * span)});
  eps.regressors *= design_.x_sd;
  for (Index i = 0; i < N; ++i) {
    eps.effects[i] = design_.effects == EffectsDistribution::Uniform
                         ? design_.effects_scale * (2.0 * rng.uniform() - 1.0)
                         : design_.effects_scale * rng.normal();
  }
  return eps;
}

Dataset DynamicPanelModel::simulate_data(const ParamVector& theta, const InnovationSet& eps) const {
  return panel_simulate(design_, theta, eps, conditions_on_x() ? &fixed_x_ : nullptr);
}

AuxVector DynamicPanelModel::aux_stats(const Dataset& data) const {
  const PanelData& d = as_panel(data);
  if (d.units() != design_.units || d.periods() != design_.periods)
    throw Error(ErrorCode::ShapeMismatch, "panel does not match the model design");
  return AuxVector(panel_lsdv(d).values());
}

Matrix DynamicPanelModel::aux_covariance(const Dataset& data) const {
  const PanelData& d = as_panel(data);
  const ParamVector at = panel_lsdv(d);
  const Matrix inner = panel_weighting_matrix(d, at).inverse();
  const Matrix Ginv = panel_moment_jacobian(at, d).inverse();
  Matrix cov = Ginv * inner * Ginv.transpose();
  return 0.5 * (cov + cov.transpose());
}

Matrix DynamicPanelModel::distance_weighting(const Dataset& data) const {
  const PanelData& d = as_panel(data);
  return panel_weighting_matrix(d, panel_lsdv(d));
}

QuasiLikelihood DynamicPanelModel::quasi_likelihood(const Dataset& data) const {
  const PanelData d = as_panel(data);
  QuasiLikelihood q;
  q.weight = distance_weighting(data);
  q.covariance = q.weight.inverse();
  q.sample_size = sample_size();
  const ParamSpace sp = ParamSpace::unbounded(panel_space().names());
  q.discrepancy = [d, sp](const Vector& theta) -> Vector {
    return panel_moments(ParamVector(sp, theta), d).values();
  };
  return q;
}

std::optional<ParamVector> DynamicPanelModel::md_from_aux(const AuxVector& psi) const {
  return aux_as_estimate(psi);
}

ParamVector DynamicPanelModel::aux_as_estimate(const AuxVector& psi) const {
  Vector v = psi.values();
  // The LSDV rho can fall outside [-1, 1] only in pathological samples.
  v = v.cwiseMax(space().lower()).cwiseMin(space().upper());
  return ParamVector(space(), std::move(v));
}

}  // namespace simest
