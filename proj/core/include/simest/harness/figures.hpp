#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simest/core/random.hpp"
#include "simest/harness/density.hpp"

namespace simest {

/// Long format CSV label,x,density. All grids must share one x vector;
/// throws GridMismatch otherwise, IOFailure on write errors.
void emit_figure_data(std::ostream& out, const std::vector<DensityGrid>& grids,
                      const std::vector<std::string>& provenance = {});
void emit_figure_data(const std::string& path, const std::vector<DensityGrid>& grids,
                      const std::vector<std::string>& provenance = {});

struct Figure1Config {
  Index T = 10;
  double m = 0.0;
  double sigma2 = 1.0;
  Index B = 50000;
  Index grid_points = 401;
  SeedSpec seed{20240601, 0};
};

/// Reverse-sampler posterior of the normal variance (flat prior) with and
/// without the Jacobian weight, against the exact posterior, on one dataset.
struct Figure1Result {
  double sigma2_hat = 0.0;
  std::vector<DensityGrid> grids;  // exact_posterior, rs_jacobian, rs_no_jacobian
  double ecdf_jacobian = 0.0;      // sup distance to the exact CDF
  double ecdf_no_jacobian = 0.0;
  double l1_jacobian = 0.0;  // L1 distance of the KDE to the exact density
  double l1_no_jacobian = 0.0;
};

Figure1Result figure1(const Figure1Config& cfg);

}  // namespace simest
