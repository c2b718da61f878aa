#pragma once

#include <iosfwd>
#include <string>

#include "simest/models/model.hpp"

namespace simest {

/// Long-format CSV with header i,t,y,x. Panel rows with t = 0 carry the
/// initial condition and an empty x; normal samples use i = 0 and empty x.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

/// Inverse of write_dataset_csv. Lines starting with '#' are skipped.
Dataset read_dataset_csv(std::istream& in);

}  // namespace simest
