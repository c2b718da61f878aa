#include "simest/harness/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/info_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "simest/core/error.hpp"
#include "simest/models/normal_model.hpp"

namespace simest {
namespace {

using boost::property_tree::ptree;

struct Named {
  const char* name;
  int value;
};

constexpr Named kEstimators[] = {
    {"ml", static_cast<int>(EstimatorKind::ML)},
    {"md", static_cast<int>(EstimatorKind::MD)},
    {"smd", static_cast<int>(EstimatorKind::SMD)},
    {"rs", static_cast<int>(EstimatorKind::RS)},
    {"abc", static_cast<int>(EstimatorKind::ABC)},
    {"lt_chain", static_cast<int>(EstimatorKind::LTChain)},
    {"lt_opt", static_cast<int>(EstimatorKind::LTOpt)},
    {"slt_chain", static_cast<int>(EstimatorKind::SLTChain)},
    {"slt_opt", static_cast<int>(EstimatorKind::SLTOpt)},
    {"bootstrap", static_cast<int>(EstimatorKind::Bootstrap)},
    {"bc", static_cast<int>(EstimatorKind::BC)},
};

template <class E, std::size_t N>
E lookup(const Named (&table)[N], const std::string& s, const char* what) {
  for (const auto& n : table)
    if (s == n.name) return static_cast<E>(n.value);
  throw Error(ErrorCode::ConfigError, fmt::format("unknown {} '{}'", what, s));
}

template <class E, std::size_t N>
std::string name_of(const Named (&table)[N], E e) {
  for (const auto& n : table)
    if (static_cast<int>(e) == n.value) return n.name;
  throw Error(ErrorCode::ConfigError, "unnamed enum value");
}

constexpr Named kWeighting[] = {{"aux", static_cast<int>(WeightingKind::Aux)},
                                {"moment", static_cast<int>(WeightingKind::Moment)},
                                {"identity", static_cast<int>(WeightingKind::Identity)}};
constexpr Named kPrior[] = {{"flat", static_cast<int>(PriorKind::Flat)}, {"power", static_cast<int>(PriorKind::Power)}};
constexpr Named kModel[] = {{"normal", static_cast<int>(ModelKind::Normal)}, {"panel", static_cast<int>(ModelKind::Panel)}};
constexpr Named kEffects[] = {{"uniform", static_cast<int>(EffectsDistribution::Uniform)},
                              {"normal", static_cast<int>(EffectsDistribution::Normal)}};

std::string num(double v) { return fmt::format("{}", v); }

template <class T>
T get(const ptree& p, const std::string& key, T fallback) {
  const auto child = p.get_child_optional(key);
  if (!child) return fallback;
  try {
    return child->template get_value<T>();
  } catch (const boost::property_tree::ptree_error& e) {
    throw Error(ErrorCode::ConfigError, fmt::format("bad value for '{}': {}", key, e.what()));
  }
}

SolverConfig read_solver(const ptree* p) {
  SolverConfig s;
  if (p == nullptr) return s;
  s.objective_tol = get(*p, "objective_tol", s.objective_tol);
  s.param_tol = get(*p, "param_tol", s.param_tol);
  s.max_iter = get(*p, "max_iter", s.max_iter);
  s.fd_step_rel = get(*p, "fd_step_rel", s.fd_step_rel);
  s.restarts = get(*p, "restarts", s.restarts);
  s.restart_seed = get(*p, "restart_seed", s.restart_seed);
  if (!(s.objective_tol > 0 && s.param_tol > 0 && s.max_iter > 0 && s.fd_step_rel > 0 && s.restarts >= 0))
    throw Error(ErrorCode::ConfigError, "solver settings must be positive");
  return s;
}

ptree write_solver(const SolverConfig& s) {
  ptree p;
  p.put("objective_tol", num(s.objective_tol));
  p.put("param_tol", num(s.param_tol));
  p.put("max_iter", s.max_iter);
  p.put("fd_step_rel", num(s.fd_step_rel));
  p.put("restarts", s.restarts);
  p.put("restart_seed", s.restart_seed);
  return p;
}

EstimatorSpec read_estimator(const ptree& p) {
  EstimatorSpec e;
  e.kind = lookup<EstimatorKind>(kEstimators, get<std::string>(p, "type", ""), "estimator type");
  e.label = get<std::string>(p, "label", to_string(e.kind));
  e.B = get(p, "B", e.B);
  e.S = get(p, "S", e.S);
  e.burn_in = get(p, "burn_in", e.burn_in);
  e.thin = get(p, "thin", e.thin);
  e.adapt_window = get(p, "adapt_window", e.adapt_window);
  e.target_acceptance = get(p, "target_acceptance", e.target_acceptance);
  e.delta = get(p, "delta", e.delta);
  e.prior = lookup<PriorKind>(kPrior, get<std::string>(p, "prior", "flat"), "prior");
  e.alpha = get(p, "alpha", e.alpha);
  e.weighting = lookup<WeightingKind>(kWeighting, get<std::string>(p, "weighting", "aux"), "weighting");
  e.apply_jacobian = get(p, "apply_jacobian", e.apply_jacobian);
  e.init_S = get(p, "init_S", e.init_S);
  e.solver = read_solver(p.get_child_optional("solver").get_ptr());
  if (e.B < 1 || e.S < 1 || e.thin < 1 || e.burn_in < 0 || e.adapt_window < 0 || e.init_S < 1)
    throw Error(ErrorCode::ConfigError, fmt::format("estimator '{}': counts out of range", e.label));
  if (e.kind == EstimatorKind::ABC && !(e.delta > 0.0))
    throw Error(ErrorCode::ConfigError, fmt::format("estimator '{}': ABC needs delta > 0", e.label));
  return e;
}

ptree write_estimator(const EstimatorSpec& e) {
  ptree p;
  p.put("label", e.label);
  p.put("type", to_string(e.kind));
  p.put("B", e.B);
  p.put("S", e.S);
  p.put("burn_in", e.burn_in);
  p.put("thin", e.thin);
  p.put("adapt_window", e.adapt_window);
  p.put("target_acceptance", num(e.target_acceptance));
  p.put("delta", num(e.delta));
  p.put("prior", name_of(kPrior, e.prior));
  p.put("alpha", num(e.alpha));
  p.put("weighting", name_of(kWeighting, e.weighting));
  p.put("apply_jacobian", e.apply_jacobian);
  p.put("init_S", e.init_S);
  p.add_child("solver", write_solver(e.solver));
  return p;
}

}  // namespace

bool operator==(const PanelDesign& a, const PanelDesign& b) {
  return a.units == b.units && a.periods == b.periods && a.rho == b.rho && a.beta == b.beta &&
         a.sigma2 == b.sigma2 && a.effects == b.effects && a.effects_scale == b.effects_scale && a.x_sd == b.x_sd &&
         a.burn_in == b.burn_in;
}

bool operator==(const SolverConfig& a, const SolverConfig& b) {
  return a.objective_tol == b.objective_tol && a.param_tol == b.param_tol && a.max_iter == b.max_iter &&
         a.fd_step_rel == b.fd_step_rel && a.restarts == b.restarts && a.restart_seed == b.restart_seed;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.name == b.name && a.model == b.model && a.T == b.T && a.m == b.m && a.sigma2 == b.sigma2 &&
         a.panel == b.panel && a.condition_on_x == b.condition_on_x && a.estimators == b.estimators &&
         a.replications == b.replications && a.master_seed == b.master_seed && a.output_dir == b.output_dir;
}

std::string to_string(EstimatorKind k) { return name_of(kEstimators, k); }

EstimatorKind parse_estimator_kind(const std::string& s) { return lookup<EstimatorKind>(kEstimators, s, "estimator type"); }

ExperimentConfig parse_config(std::istream& in) {
  ptree root;
  try {
    boost::property_tree::read_info(in, root);
  } catch (const boost::property_tree::ptree_error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  ExperimentConfig c;
  c.name = get<std::string>(root, "name", c.name);
  c.replications = get(root, "replications", c.replications);
  c.master_seed = get(root, "master_seed", c.master_seed);
  c.output_dir = get<std::string>(root, "output_dir", c.output_dir);

  const auto model = root.get_child_optional("model");
  if (!model) throw Error(ErrorCode::ConfigError, "missing model section");
  c.model = lookup<ModelKind>(kModel, get<std::string>(*model, "kind", ""), "model kind");
  if (c.model == ModelKind::Normal) {
    c.T = get(*model, "T", c.T);
    c.m = get(*model, "m", c.m);
    c.sigma2 = get(*model, "sigma2", c.sigma2);
  } else {
    PanelDesign& d = c.panel;
    d.units = get(*model, "units", d.units);
    d.periods = get(*model, "periods", d.periods);
    d.rho = get(*model, "rho", d.rho);
    d.beta = get(*model, "beta", d.beta);
    d.sigma2 = get(*model, "sigma2", d.sigma2);
    d.effects = lookup<EffectsDistribution>(kEffects, get<std::string>(*model, "effects", "uniform"), "effects distribution");
    d.effects_scale = get(*model, "effects_scale", d.effects_scale);
    d.x_sd = get(*model, "x_sd", d.x_sd);
    d.burn_in = get(*model, "burn_in", d.burn_in);
    c.condition_on_x = get(*model, "condition_on_x", c.condition_on_x);
  }
  if (const auto list = root.get_child_optional("estimators")) {
    for (const auto& [key, child] : *list) {
      if (key != "estimator") throw Error(ErrorCode::ConfigError, "unexpected key '" + key + "' in estimators");
      c.estimators.push_back(read_estimator(child));
    }
  }
  if (c.replications < 1) throw Error(ErrorCode::ConfigError, "replications must be at least 1");
  for (std::size_t i = 0; i < c.estimators.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (c.estimators[i].label == c.estimators[j].label)
        throw Error(ErrorCode::ConfigError, "duplicate estimator label '" + c.estimators[i].label + "'");
  make_model(c);  // validates the model parameters
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  ptree root;
  root.put("name", c.name);
  ptree model;
  model.put("kind", name_of(kModel, c.model));
  if (c.model == ModelKind::Normal) {
    model.put("T", c.T);
    model.put("m", num(c.m));
    model.put("sigma2", num(c.sigma2));
  } else {
    const PanelDesign& d = c.panel;
    model.put("units", d.units);
    model.put("periods", d.periods);
    model.put("rho", num(d.rho));
    model.put("beta", num(d.beta));
    model.put("sigma2", num(d.sigma2));
    model.put("effects", name_of(kEffects, d.effects));
    model.put("effects_scale", num(d.effects_scale));
    model.put("x_sd", num(d.x_sd));
    model.put("burn_in", d.burn_in);
    model.put("condition_on_x", c.condition_on_x);
  }
  root.add_child("model", model);
  root.put("replications", c.replications);
  root.put("master_seed", c.master_seed);
  root.put("output_dir", c.output_dir);
  ptree list;
  for (const EstimatorSpec& e : c.estimators) list.add_child("estimator", write_estimator(e));
  root.add_child("estimators", list);
  boost::property_tree::write_info(out, root);
}

std::string config_to_string(const ExperimentConfig& cfg) {
  std::ostringstream s;
  write_config(s, cfg);
  return s.str();
}

std::unique_ptr<Model> make_model(const ExperimentConfig& cfg) {
  try {
    if (cfg.model == ModelKind::Normal) return std::make_unique<NormalModel>(cfg.T, cfg.m, cfg.sigma2);
    return std::make_unique<DynamicPanelModel>(cfg.panel);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

Figure1Config parse_figure1_config(std::istream& in) {
  ptree root;
  try {
    boost::property_tree::read_info(in, root);
  } catch (const boost::property_tree::ptree_error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  Figure1Config f;
  f.T = get(root, "T", f.T);
  f.m = get(root, "m", f.m);
  f.sigma2 = get(root, "sigma2", f.sigma2);
  f.B = get(root, "B", f.B);
  f.grid_points = get(root, "grid_points", f.grid_points);
  f.seed = SeedSpec{get(root, "master_seed", f.seed.master_seed), 0};
  return f;
}

Figure1Config load_figure1_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  return parse_figure1_config(in);
}

}  // namespace simest
