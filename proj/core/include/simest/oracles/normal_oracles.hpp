#pragma once

#include <string>
#include <string_view>

namespace simest {

/// Inputs of the closed-form results for the normal-variance example.
/// sigma2 is the true variance, sigma2_hat the observed MLE, alpha the
/// exponent of the prior sigma2^{-alpha}.
struct NormalOracleInput {
  int T = 10;
  int S = 1;
  int B = 1;
  double sigma2 = 1.0;
  double sigma2_hat = 1.0;
  double alpha = 0.0;
};

struct PosteriorStats {
  double mode;  // joint posterior mode of sigma2
  double mean;  // marginal posterior mean of sigma2
};

/// Posterior mode T s2/(T + 2 alpha) and mean T s2/(T + 2 alpha - 5).
/// Throws DenominatorNonPositive when T + 2 alpha <= 5.
PosteriorStats bc_posterior_stats(const NormalOracleInput& in);

/// Expectation over data of the exact posterior mean, sigma2 (T-1)/(T + 2 alpha - 5).
double bc_expected_mean(const NormalOracleInput& in);

/// Marginal posterior of sigma2 under the power prior:
/// inverse gamma with shape (T-3)/2 + alpha and scale T s2 / 2.
double exact_posterior_cdf(const NormalOracleInput& in, double x);
double exact_posterior_quantile(const NormalOracleInput& in, double p);

/// Posterior mean of sigma2 by numerical integration of the unnormalized
/// marginal posterior; independent of the closed forms.
double posterior_mean_quadrature(int T, double sigma2_hat, double alpha);

enum class OracleEstimator { ML, MD, BC, BC_R, RS_U, RS_R, SMD, LT_U, SLT_U, Bootstrap };

OracleEstimator parse_oracle_estimator(std::string_view name);
std::string to_string(OracleEstimator e);

struct OracleRow {
  double expected;
  double bias;
  double variance;
};

/// Sampling expectation, bias and variance over datasets of the estimator of
/// sigma2. BC uses alpha = 0 and BC_R alpha = 2; RS_R uses finite B; RS_U is
/// the B -> infinity limit. Throws DenominatorNonPositive or UnsupportedEstimator.
OracleRow table2_row(OracleEstimator e, const NormalOracleInput& in);

/// The same estimators conditional on the observed sigma2_hat (posterior
/// means are averaged over simulation draws, B -> infinity for RS).
double table2_conditional_mean(OracleEstimator e, const NormalOracleInput& in);

/// sqrt(2/T) phi(c) / Phi(c) with c = sqrt(T/2): truncation correction of the
/// LT quasi-posterior mean.
double kappa_lt(int T);
/// d2^2 (d1 + d2 - 2) / ((d2 - 2)^2 (d2 - 4)), d1 = T - 1, d2 = S (T - 1).
double kappa_1(int T, int S);
/// kappa_lt * S T / (S (T-1) - 2).
double expected_kappa_slt(int T, int S);

/// Prior exponent whose posterior mean has no O(1/T) bias: 2 for every (T, S).
int bias_reducing_prior_exponent(int T, int S);

double standard_normal_cdf(double x);
double standard_normal_pdf(double x);

}  // namespace simest
