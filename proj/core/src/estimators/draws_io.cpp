#include "simest/estimators/draws_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simest/core/error.hpp"

namespace simest {

void write_draws_csv(std::ostream& out, const WeightedDraws& draws) {
  out << "b";
  for (const auto& name : draws.space().names()) out << ',' << name;
  out << ",raw_weight,norm_weight,converged,jac_logdet\n";
  for (Index b = 0; b < draws.size(); ++b) {
    out << b;
    for (Index j = 0; j < draws.dim(); ++j) fmt::print(out, ",{}", draws.draws()(b, j));
    const DrawDiagnostics& d = draws.diagnostics()[static_cast<std::size_t>(b)];
    fmt::print(out, ",{},{},{},{}\n", draws.raw_weights()[b], draws.norm_weights()[b], d.converged ? 1 : 0,
               d.jac_logdet);
  }
}

void write_draws_csv(const std::string& path, const WeightedDraws& draws) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  write_draws_csv(out, draws);
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

WeightedDraws read_draws_csv(std::istream& in, const ParamSpace& space) {
  const Index K = space.size();
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    try {
      while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw Error(ErrorCode::IOFailure, "malformed draws row: " + line);
    }
    if (static_cast<Index>(row.size()) != K + 5) throw Error(ErrorCode::IOFailure, "draws row has wrong width");
    rows.push_back(std::move(row));
  }
  const auto B = static_cast<Index>(rows.size());
  Matrix draws(B, K);
  Vector raw(B);
  std::vector<DrawDiagnostics> diag(rows.size());
  for (Index b = 0; b < B; ++b) {
    const auto& r = rows[static_cast<std::size_t>(b)];
    for (Index j = 0; j < K; ++j) draws(b, j) = r[static_cast<std::size_t>(j + 1)];
    raw[b] = r[static_cast<std::size_t>(K + 1)];
    diag[static_cast<std::size_t>(b)].converged = r[static_cast<std::size_t>(K + 3)] != 0.0;
    diag[static_cast<std::size_t>(b)].jac_logdet = r[static_cast<std::size_t>(K + 4)];
  }
  return WeightedDraws::from_raw(space, std::move(draws), std::move(raw), std::move(diag));
}

}  // namespace simest
