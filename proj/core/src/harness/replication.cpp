#include "simest/harness/replication.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "simest/core/error.hpp"
#include "simest/estimators/chains.hpp"
#include "simest/estimators/laplace.hpp"
#include "simest/estimators/point_estimators.hpp"
#include "simest/estimators/reverse_sampler.hpp"
#include "simest/models/normal_model.hpp"
#include "simest/oracles/normal_oracles.hpp"

namespace simest {

bool operator==(const ReplicationRow& a, const ReplicationRow& b) {
  return a.estimator == b.estimator && a.param == b.param && a.mean == b.mean &&
         a.sd == b.sd && a.bias == b.bias && a.mc_se == b.mc_se && a.failures == b.failures;
}

const ReplicationRow& ReplicationTable::at(const std::string& estimator, const std::string& param) const {
  for (const auto& r : rows)
    if (r.estimator == estimator && r.param == param) return r;
  throw Error(ErrorCode::InvalidArgument, fmt::format("no row for {} / {}", estimator, param));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Everything estimators need about one observed dataset.
struct Observation {
  const Model* model;
  Dataset data;
  AuxVector psi;
  ParamVector ml;
  ParamVector md;
  Matrix aux_cov;
  Vector md_sd;
};

Prior make_prior(const EstimatorSpec& e, const Model& model) {
  if (e.prior == PriorKind::Flat) return Prior::flat(model.space());
  return Prior::power(model.space(), model.space().index_of("sigma2"), e.alpha);
}

Matrix make_weight(const EstimatorSpec& e, const Observation& o) {
  switch (e.weighting) {
    case WeightingKind::Aux: return o.aux_cov.inverse();
    case WeightingKind::Moment: return o.model->distance_weighting(o.data);
    case WeightingKind::Identity: return Matrix::Identity(o.model->dim(), o.model->dim());
  }
  throw Error(ErrorCode::ConfigError, "unknown weighting");
}

ChainConfig chain_config(const EstimatorSpec& e, const SeedSpec& seed) {
  ChainConfig c;
  c.draws = e.B;
  c.burn_in = e.burn_in;
  c.thin = e.thin;
  c.delta = e.delta;
  c.simulations = e.S;
  c.seed = seed;
  return c;
}

ProposalSpec proposal_for(const EstimatorSpec& e, const Observation& o) {
  ProposalSpec p = default_proposal(o.md_sd, e.adapt_window);
  p.target_acceptance = e.target_acceptance;
  return p;
}

Vector run_estimator(const EstimatorSpec& e, const Observation& o, const SeedSpec& seed) {
  const Model& model = *o.model;
  switch (e.kind) {
    case EstimatorKind::ML: return o.ml.values();
    case EstimatorKind::MD: return md_estimate(model, o.psi, make_weight(e, o)).point.values();
    case EstimatorKind::SMD:
      return smd_estimate(model, o.psi, make_weight(e, o), e.S, seed, o.md, e.solver).point.values();
    case EstimatorKind::Bootstrap: return bootstrap_bias_correct(model, o.ml, e.B, seed).point.values();
    case EstimatorKind::RS: {
      ReverseSamplerConfig rc;
      rc.draws = e.B;
      rc.seed = seed;
      rc.apply_jacobian = e.apply_jacobian;
      rc.solver = e.solver;
      const Matrix W = make_weight(e, o);
      return weighted_mean(reverse_sampler(model, o.psi, make_prior(e, model), o.md, rc, &W)).values();
    }
    case EstimatorKind::ABC: {
      const Matrix W = make_weight(e, o);
      const ParamVector start =
          smd_estimate(model, o.psi, W, e.init_S, seed.child(7), o.md, e.solver).point;
      return weighted_mean(mcmc_abc_chain(model, o.psi, W, make_prior(e, model), proposal_for(e, o), start,
                                          chain_config(e, seed)))
          .values();
    }
    case EstimatorKind::LTChain: {
      QuasiLikelihood q = model.quasi_likelihood(o.data);
      if (e.weighting == WeightingKind::Identity) q.weight = Matrix::Identity(model.dim(), model.dim());
      return weighted_mean(lt_chain(q, model.space(), make_prior(e, model), proposal_for(e, o), o.md,
                                    chain_config(e, seed)))
          .values();
    }
    case EstimatorKind::LTOpt: {
      PerturbedSolveConfig pc{e.B, seed, 50, 0.01, e.solver};
      const QuasiLikelihood q = model.quasi_likelihood(o.data);
      return weighted_mean(lt_optimization(q, model.space(), make_prior(e, model), o.md, pc)).values();
    }
    case EstimatorKind::SLTChain:
      return weighted_mean(slt_chain(model, o.psi, make_weight(e, o), make_prior(e, model), proposal_for(e, o), o.md,
                                     chain_config(e, seed)))
          .values();
    case EstimatorKind::SLTOpt: {
      PerturbedSolveConfig pc{e.B, seed, 50, 0.01, e.solver};
      const Matrix W = make_weight(e, o);
      return weighted_mean(slt_optimization(model, o.psi, o.aux_cov, make_prior(e, model), e.S, o.md, pc, &W))
          .values();
    }
    case EstimatorKind::BC: {
      if (model.name() != "normal")
        throw Error(ErrorCode::UnsupportedEstimator, "exact posterior mean is only available for the normal model");
      const auto& normal = static_cast<const NormalModel&>(model);
      const double mean = posterior_mean_quadrature(static_cast<int>(normal.periods()), o.psi[1],
                                                    e.prior == PriorKind::Power ? e.alpha : 0.0);
      return Vector{{o.psi[0], mean}};
    }
  }
  throw Error(ErrorCode::UnsupportedEstimator, "unknown estimator");
}

struct Slot {
  std::vector<Vector> values;  // per estimator, empty on failure
  std::vector<double> seconds;
};

Slot run_one(const ExperimentConfig& cfg, const Model& base, Index r) {
  const SeedSpec rep_seed{cfg.master_seed, static_cast<std::uint64_t>(r)};
  const InnovationSet eps = base.simulate_innovations(rep_seed.child(0));
  Dataset data = base.simulate_data(base.truth(), eps);

  std::unique_ptr<Model> conditional;
  const Model* model = &base;
  if (cfg.model == ModelKind::Panel && cfg.condition_on_x) {
    conditional = std::make_unique<DynamicPanelModel>(
        static_cast<const DynamicPanelModel&>(base).conditional_on(std::get<PanelData>(data).x));
    model = conditional.get();
  }
  const AuxVector psi = model->aux_stats(data);
  const ParamVector ml = model->aux_as_estimate(psi);
  const Matrix aux_cov = model->aux_covariance(data);
  const EstimateSummary md = md_estimate(*model, psi, Matrix(), &aux_cov);
  Observation o{model, std::move(data), psi, ml, md.point, aux_cov, md.spread};

  Slot slot;
  for (const EstimatorSpec& e : cfg.estimators) {
    const auto start = std::chrono::steady_clock::now();
    Vector v;
    try {
      v = run_estimator(e, o, rep_seed.child(label_hash(e.label)));
      if (!v.allFinite()) v.resize(0);
    } catch (const Error&) {
      v.resize(0);
    }
    slot.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    slot.values.push_back(std::move(v));
  }
  return slot;
}

}  // namespace

ReplicationOutcome run_replications_detailed(const ExperimentConfig& cfg, unsigned threads) {
  const std::unique_ptr<Model> model = make_model(cfg);
  const Index R = cfg.replications;
  if (R < 1) throw Error(ErrorCode::ConfigError, "replications must be at least 1");
  std::vector<Slot> slots(static_cast<std::size_t>(R));

  std::atomic<Index> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (Index r = next++; r < R; r = next++) {
      try {
        slots[static_cast<std::size_t>(r)] = run_one(cfg, *model, r);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(R)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  ReplicationOutcome out;
  out.table.replications = R;
  const Index K = model->dim();
  const auto& names = model->space().names();
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    const std::string& label = cfg.estimators[e].label;
    Matrix est = Matrix::Constant(R, K, kNaN);
    std::size_t failures = 0;
    double seconds = 0.0;
    for (Index r = 0; r < R; ++r) {
      const Slot& s = slots[static_cast<std::size_t>(r)];
      seconds += s.seconds[e];
      if (s.values[e].size() == K)
        est.row(r) = s.values[e].transpose();
      else
        ++failures;
    }
    if (static_cast<double>(failures) > 0.05 * static_cast<double>(R))
      throw Error(ErrorCode::TooManyFailures,
                  fmt::format("estimator '{}' failed on {} of {} replications", label, failures, R));
    const double ok = static_cast<double>(static_cast<std::size_t>(R) - failures);
    for (Index j = 0; j < K; ++j) {
      double sum = 0.0;
      for (Index r = 0; r < R; ++r)
        if (!std::isnan(est(r, j))) sum += est(r, j);
      const double mean = sum / ok;
      double ss = 0.0;
      for (Index r = 0; r < R; ++r)
        if (!std::isnan(est(r, j))) ss += (est(r, j) - mean) * (est(r, j) - mean);
      const double sd = ok > 1.0 ? std::sqrt(ss / (ok - 1.0)) : 0.0;
      ReplicationRow row;
      row.estimator = label;
      row.param = names[static_cast<std::size_t>(j)];
      row.truth = model->truth()[j];
      row.mean = mean;
      row.sd = sd;
      row.bias = mean - row.truth;
      row.mc_se = sd / std::sqrt(ok);
      row.failures = failures;
      row.wall_seconds = seconds;
      out.table.rows.push_back(row);
    }
    out.labels.push_back(label);
    out.estimates.push_back(std::move(est));
  }
  return out;
}

ReplicationTable run_replications(const ExperimentConfig& cfg, unsigned threads) {
  return run_replications_detailed(cfg, threads).table;
}

}  // namespace simest
