#include "simest/models/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simest/core/error.hpp"

namespace simest {

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "i,t,y,x\n";
  if (const auto* n = std::get_if<NormalData>(&data)) {
    for (Index t = 0; t < n->y.size(); ++t) fmt::print(out, "0,{},{},\n", t + 1, n->y[t]);
    return;
  }
  const auto& p = std::get<PanelData>(data);
  for (Index i = 0; i < p.units(); ++i) {
    fmt::print(out, "{},0,{},\n", i, p.y0[i]);
    for (Index t = 0; t < p.periods(); ++t) fmt::print(out, "{},{},{},{}\n", i, t + 1, p.y(i, t), p.x(i, t));
  }
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  write_dataset_csv(out, data);
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

Dataset read_dataset_csv(std::istream& in) {
  struct Row {
    long i, t;
    double y;
    std::string x;
  };
  std::vector<Row> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string f[4];
    for (auto& field : f) std::getline(ss, field, ',');
    try {
      rows.push_back({std::stol(f[0]), std::stol(f[1]), std::stod(f[2]), f[3]});
    } catch (const std::exception&) {
      throw Error(ErrorCode::IOFailure, "malformed dataset row: " + line);
    }
  }
  if (rows.empty()) throw Error(ErrorCode::IOFailure, "dataset has no rows");

  bool panel = false;
  for (const Row& r : rows) panel = panel || !r.x.empty();
  if (!panel) {
    Vector y(static_cast<Index>(rows.size()));
    for (const Row& r : rows) {
      if (r.t < 1 || r.t > y.size()) throw Error(ErrorCode::IOFailure, "normal sample index out of range");
      y[r.t - 1] = r.y;
    }
    return NormalData{y};
  }
  long N = 0, T = 0;
  for (const Row& r : rows) {
    N = std::max(N, r.i + 1);
    T = std::max(T, r.t);
  }
  if (static_cast<long>(rows.size()) != N * (T + 1)) throw Error(ErrorCode::IOFailure, "panel is not balanced");
  PanelData p{Matrix(N, T), Matrix(N, T), Vector(N)};
  for (const Row& r : rows) {
    if (r.t == 0) {
      p.y0[r.i] = r.y;
    } else {
      p.y(r.i, r.t - 1) = r.y;
      p.x(r.i, r.t - 1) = std::stod(r.x);
    }
  }
  return p;
}

}  // namespace simest
