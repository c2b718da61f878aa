#include "simest/harness/selftest.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simest/estimators/point_estimators.hpp"
#include "simest/estimators/reverse_sampler.hpp"
#include "simest/harness/replication.hpp"
#include "simest/models/normal_model.hpp"
#include "simest/oracles/normal_oracles.hpp"

namespace simest {
namespace {

struct Checker {
  std::ostream& out;
  int failed = 0;

  void check(bool ok, const std::string& what) {
    fmt::print(out, "{} {}\n", ok ? "PASS" : "FAIL", what);
    if (!ok) ++failed;
  }
};

EstimatorSpec spec(const std::string& label, EstimatorKind kind, Index S = 1, Index B = 500) {
  EstimatorSpec e;
  e.label = label;
  e.kind = kind;
  e.S = S;
  e.B = B;
  return e;
}

}  // namespace

int run_selftest(std::ostream& out, unsigned threads) {
  Checker c{out};

  const OracleRow ml = table2_row(OracleEstimator::ML, {6, 1, 1, 2.0, 2.0, 0.0});
  c.check(std::abs(ml.expected - 5.0 / 3.0) < 1e-12 && std::abs(ml.variance - 10.0 / 9.0) < 1e-12,
          "oracle: ML row at T=6, sigma2=2");
  c.check(std::abs(kappa_lt(6) - 0.0536) < 5e-4, fmt::format("oracle: kappa_LT(6) = {:.5f}", kappa_lt(6)));

  ExperimentConfig cfg;
  cfg.name = "selftest";
  cfg.T = 10;
  cfg.sigma2 = 2.0;
  cfg.replications = 400;
  cfg.master_seed = 777;
  cfg.estimators = {spec("md", EstimatorKind::MD), spec("smd1", EstimatorKind::SMD, 1),
                    spec("bootstrap", EstimatorKind::Bootstrap, 1, 200)};
  const ReplicationTable t = run_replications(cfg, threads);
  NormalOracleInput in{10, 1, 1, 2.0, 2.0, 0.0};
  const auto band = [&](const std::string& label, OracleEstimator e, int S) {
    in.S = S;
    const ReplicationRow& r = t.at(label, "sigma2");
    const double expect = table2_row(e, in).expected;
    c.check(std::abs(r.mean - expect) <= 4.0 * r.mc_se,
            fmt::format("normal {}: mean {:.4f} vs {:.4f} (4 MC SE = {:.4f})", label, r.mean, expect, 4.0 * r.mc_se));
  };
  band("md", OracleEstimator::MD, 1);
  band("smd1", OracleEstimator::SMD, 1);
  band("bootstrap", OracleEstimator::Bootstrap, 1);

  // RS under the sigma^-4 prior reproduces SMD with S = B on the same streams.
  const NormalModel model(10, 0.0, 2.0);
  const Dataset data = model.simulate_data(model.truth(), model.simulate_innovations(SeedSpec{99, 0}));
  const AuxVector psi = model.aux_stats(data);
  ReverseSamplerConfig rc;
  rc.draws = 100;
  rc.seed = SeedSpec{99, 1};
  const WeightedDraws rs =
      reverse_sampler(model, psi, Prior::power(model.space(), 1, 2.0), *model.md_from_aux(psi), rc);
  double scale = 0.0;
  for (Index b = 0; b < rc.draws; ++b) {
    const Vector e = model.simulate_innovations(reverse_sampler_stream(rc.seed, b, rs.diagnostics()[static_cast<std::size_t>(b)].attempts - 1)).shocks;
    scale += (e.array() - e.mean()).square().mean();
  }
  const double closed = psi[1] / (scale / static_cast<double>(rc.draws));
  const double got = weighted_mean(rs)[1];
  c.check(std::abs(got - closed) < 1e-8 * closed,
          fmt::format("reverse sampler = SMD under sigma^-4 prior: {:.12f} vs {:.12f}", got, closed));
  return c.failed;
}

}  // namespace simest
