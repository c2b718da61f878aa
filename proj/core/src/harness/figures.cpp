#include "simest/harness/figures.hpp"

#include <fstream>
#include <ostream>

#include <boost/math/distributions/inverse_gamma.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simest/core/error.hpp"
#include "simest/estimators/reverse_sampler.hpp"
#include "simest/harness/tables.hpp"
#include "simest/models/normal_model.hpp"
#include "simest/oracles/normal_oracles.hpp"

namespace simest {

void emit_figure_data(std::ostream& out, const std::vector<DensityGrid>& grids,
                      const std::vector<std::string>& provenance) {
  for (const auto& g : grids)
    if (g.grid.size() != grids.front().grid.size() || g.grid != grids.front().grid || g.density.size() != g.grid.size())
      throw Error(ErrorCode::GridMismatch, "figure series use different grids");
  write_comment_lines(out, provenance);
  out << "label,x,density\n";
  for (const auto& g : grids)
    for (Index i = 0; i < g.grid.size(); ++i) fmt::print(out, "{},{},{}\n", g.label, g.grid[i], g.density[i]);
}

void emit_figure_data(const std::string& path, const std::vector<DensityGrid>& grids,
                      const std::vector<std::string>& provenance) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  emit_figure_data(out, grids, provenance);
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

Figure1Result figure1(const Figure1Config& cfg) {
  const NormalModel model(cfg.T, cfg.m, cfg.sigma2);
  const Dataset data = model.simulate_data(model.truth(), model.simulate_innovations(cfg.seed.child(0)));
  const AuxVector psi = model.aux_stats(data);
  const ParamVector start = *model.md_from_aux(psi);
  const Prior flat = Prior::flat(model.space());

  ReverseSamplerConfig rc;
  rc.draws = cfg.B;
  rc.seed = cfg.seed.child(1);
  const WeightedDraws with = reverse_sampler(model, psi, flat, start, rc);
  rc.apply_jacobian = false;
  const WeightedDraws without = reverse_sampler(model, psi, flat, start, rc);

  NormalOracleInput in;
  in.T = static_cast<int>(cfg.T);
  in.sigma2 = cfg.sigma2;
  in.sigma2_hat = psi[1];
  const auto cdf = [&in](double x) { return exact_posterior_cdf(in, x); };
  const boost::math::inverse_gamma_distribution<double> exact(0.5 * (in.T - 3.0), 0.5 * in.T * in.sigma2_hat);

  const Vector grid = linear_grid(exact_posterior_quantile(in, 0.001), exact_posterior_quantile(in, 0.995),
                                  cfg.grid_points);
  Figure1Result out;
  out.sigma2_hat = psi[1];
  out.grids.push_back(tabulate_density([&exact](double x) { return boost::math::pdf(exact, x); }, grid,
                                       "exact_posterior"));
  out.grids.push_back(weighted_kde(with, 1, grid, "rs_jacobian"));
  out.grids.push_back(weighted_kde(without, 1, grid, "rs_no_jacobian"));
  out.ecdf_jacobian = weighted_ecdf_distance(with, 1, cdf);
  out.ecdf_no_jacobian = weighted_ecdf_distance(without, 1, cdf);
  out.l1_jacobian = l1_distance(out.grids[1], out.grids[0]);
  out.l1_no_jacobian = l1_distance(out.grids[2], out.grids[0]);
  return out;
}

}  // namespace simest
