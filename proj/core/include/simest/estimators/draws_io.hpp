#pragma once

#include <iosfwd>
#include <string>

#include "simest/core/weights.hpp"

namespace simest {

/// CSV with columns b, <parameter names>, raw_weight, norm_weight, converged, jac_logdet.
void write_draws_csv(std::ostream& out, const WeightedDraws& draws);
void write_draws_csv(const std::string& path, const WeightedDraws& draws);

/// Reads draws written by write_draws_csv into the given space.
/// Lines starting with '#' are skipped.
WeightedDraws read_draws_csv(std::istream& in, const ParamSpace& space);

}  // namespace simest
