#include "simest/oracles/normal_oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "simest/core/error.hpp"

namespace simest {
namespace {

void check(const NormalOracleInput& in) {
  if (in.T < 2 || in.S < 1 || in.B < 1) throw Error(ErrorCode::InvalidArgument, "T >= 2, S >= 1 and B >= 1 required");
  if (!(in.sigma2 > 0.0) || !(in.sigma2_hat > 0.0)) throw Error(ErrorCode::InvalidArgument, "variances must be positive");
}

double positive(double denom, const char* what) {
  if (!(denom > 0.0)) throw Error(ErrorCode::DenominatorNonPositive, what);
  return denom;
}

// E, Var of sigma2 * c * X / Y with X ~ chi2(d1), Y ~ chi2(d2) independent,
// scaled so that the result is sigma2 * S X / Y.
OracleRow ratio_row(double sigma2, double d1, double d2, double S) {
  const double e = sigma2 * S * d1 / positive(d2 - 2.0, "S(T-1) must exceed 2");
  positive(d2 - 4.0, "S(T-1) must exceed 4");
  const double var = 2.0 * sigma2 * sigma2 * (d2 * d2 * (d1 + d2 - 2.0) / ((d2 - 2.0) * (d2 - 2.0) * (d2 - 4.0))) / d1;
  return {e, e - sigma2, var};
}

}  // namespace

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double standard_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

PosteriorStats bc_posterior_stats(const NormalOracleInput& in) {
  check(in);
  const double T = in.T;
  const double mean_den = positive(T + 2.0 * in.alpha - 5.0, "T + 2 alpha must exceed 5");
  return {T * in.sigma2_hat / (T + 2.0 * in.alpha), T * in.sigma2_hat / mean_den};
}

double bc_expected_mean(const NormalOracleInput& in) {
  check(in);
  const double T = in.T;
  return in.sigma2 * (T - 1.0) / positive(T + 2.0 * in.alpha - 5.0, "T + 2 alpha must exceed 5");
}

double exact_posterior_cdf(const NormalOracleInput& in, double x) {
  check(in);
  const double shape = positive(0.5 * (in.T - 3.0) + in.alpha, "posterior shape must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_q(shape, 0.5 * in.T * in.sigma2_hat / x);
}

double exact_posterior_quantile(const NormalOracleInput& in, double p) {
  check(in);
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must be in (0, 1)");
  const double shape = positive(0.5 * (in.T - 3.0) + in.alpha, "posterior shape must be positive");
  return 0.5 * in.T * in.sigma2_hat / boost::math::gamma_q_inv(shape, p);
}

double posterior_mean_quadrature(int T, double sigma2_hat, double alpha) {
  if (T < 2 || !(sigma2_hat > 0.0)) throw Error(ErrorCode::InvalidArgument, "T >= 2 and sigma2_hat > 0 required");
  const double power = alpha + 0.5 * (T - 1.0);
  const double rate = 0.5 * T * sigma2_hat;
  positive(power - 2.0, "posterior mean does not exist");
  // m integrated out; normalized at the marginal mode to keep values O(1)
  const double mode = rate / power;
  const double log_peak = -power * std::log(mode) - rate / mode;
  const auto density = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(-power * std::log(s) - rate / s - log_peak);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double mass = integrator.integrate(density);
  const double first = integrator.integrate([&](double s) { return s * density(s); });
  return first / mass;
}

OracleEstimator parse_oracle_estimator(std::string_view name) {
  if (name == "ml") return OracleEstimator::ML;
  if (name == "md") return OracleEstimator::MD;
  if (name == "bc") return OracleEstimator::BC;
  if (name == "bc_r") return OracleEstimator::BC_R;
  if (name == "rs_u") return OracleEstimator::RS_U;
  if (name == "rs_r") return OracleEstimator::RS_R;
  if (name == "smd") return OracleEstimator::SMD;
  if (name == "lt_u") return OracleEstimator::LT_U;
  if (name == "slt_u") return OracleEstimator::SLT_U;
  if (name == "bootstrap") return OracleEstimator::Bootstrap;
  throw Error(ErrorCode::UnsupportedEstimator, "no closed form for estimator " + std::string(name));
}

std::string to_string(OracleEstimator e) {
  switch (e) {
    case OracleEstimator::ML: return "ml";
    case OracleEstimator::MD: return "md";
    case OracleEstimator::BC: return "bc";
    case OracleEstimator::BC_R: return "bc_r";
    case OracleEstimator::RS_U: return "rs_u";
    case OracleEstimator::RS_R: return "rs_r";
    case OracleEstimator::SMD: return "smd";
    case OracleEstimator::LT_U: return "lt_u";
    case OracleEstimator::SLT_U: return "slt_u";
    case OracleEstimator::Bootstrap: return "bootstrap";
  }
  throw Error(ErrorCode::UnsupportedEstimator, "unknown estimator");
}

OracleRow table2_row(OracleEstimator e, const NormalOracleInput& in) {
  check(in);
  const double T = in.T;
  const double s2 = in.sigma2;
  const double ml_var = 2.0 * s2 * s2 * (T - 1.0) / (T * T);
  // every row is c * sigma2_hat for a constant c, except the simulated ones
  const auto scaled = [&](double c) {
    const double e = c * s2 * (T - 1.0) / T;
    return OracleRow{e, e - s2, c * c * ml_var};
  };
  switch (e) {
    case OracleEstimator::ML: return scaled(1.0);
    case OracleEstimator::MD: return scaled(T / (T - 1.0));
    case OracleEstimator::BC:
    case OracleEstimator::RS_U: return scaled(T / positive(T - 5.0, "T must exceed 5"));
    case OracleEstimator::BC_R: return scaled(T / (T - 1.0));
    case OracleEstimator::RS_R: return ratio_row(s2, T - 1.0, in.B * (T - 1.0), in.B);
    case OracleEstimator::SMD: return ratio_row(s2, T - 1.0, in.S * (T - 1.0), in.S);
    case OracleEstimator::LT_U: return scaled(1.0 + kappa_lt(in.T));
    case OracleEstimator::SLT_U: {
      const double k = 1.0 + kappa_lt(in.T);
      const OracleRow r = ratio_row(s2, T - 1.0, in.S * (T - 1.0), in.S);
      return {k * r.expected, k * r.expected - s2, k * k * r.variance};
    }
    case OracleEstimator::Bootstrap: return scaled(1.0 + 1.0 / T);
  }
  throw Error(ErrorCode::UnsupportedEstimator, "unknown estimator");
}

double table2_conditional_mean(OracleEstimator e, const NormalOracleInput& in) {
  check(in);
  const double T = in.T;
  const double s2 = in.sigma2_hat;
  switch (e) {
    case OracleEstimator::ML: return s2;
    case OracleEstimator::MD: return s2 * T / (T - 1.0);
    case OracleEstimator::BC:
    case OracleEstimator::RS_U: return s2 * T / positive(T - 5.0, "T must exceed 5");
    case OracleEstimator::BC_R:
    case OracleEstimator::RS_R: return s2 * T / (T - 1.0);
    case OracleEstimator::SMD: return s2 * in.S * T / positive(in.S * (T - 1.0) - 2.0, "S(T-1) must exceed 2");
    case OracleEstimator::LT_U: return s2 * (1.0 + kappa_lt(in.T));
    case OracleEstimator::SLT_U:
      return s2 * in.S * T / positive(in.S * (T - 1.0) - 2.0, "S(T-1) must exceed 2") * (1.0 + kappa_lt(in.T));
    case OracleEstimator::Bootstrap: return s2 * (1.0 + 1.0 / T);
  }
  throw Error(ErrorCode::UnsupportedEstimator, "unknown estimator");
}

double kappa_lt(int T) {
  if (T < 1) throw Error(ErrorCode::InvalidArgument, "T must be positive");
  const double c = std::sqrt(0.5 * T);
  return standard_normal_pdf(c) / standard_normal_cdf(c) / c;
}

double kappa_1(int T, int S) {
  const double d1 = T - 1.0;
  const double d2 = S * d1;
  positive(d2 - 4.0, "S(T-1) must exceed 4");
  return d2 * d2 * (d1 + d2 - 2.0) / ((d2 - 2.0) * (d2 - 2.0) * (d2 - 4.0));
}

double expected_kappa_slt(int T, int S) {
  return kappa_lt(T) * S * T / positive(S * (T - 1.0) - 2.0, "S(T-1) must exceed 2");
}

int bias_reducing_prior_exponent(int, int) { return 2; }

}  // namespace simest
