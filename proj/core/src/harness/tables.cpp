#include "simest/harness/tables.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "simest/core/error.hpp"

namespace simest {
namespace {

void csv(std::ostream& out, const ReplicationTable& t, const TableOptions& opts) {
  write_comment_lines(out, opts.provenance);
  out << "# replications=" << t.replications << '\n';
  out << "Estimator,Param,Mean,SD,Bias,MC_SE,Failures\n";
  for (const auto& r : t.rows)
    fmt::print(out, "{},{},{},{},{},{},{}\n", r.estimator, r.param, r.mean, r.sd, r.bias, r.mc_se, r.failures);
}

void provenance_comment(std::ostream& out, const TableOptions& opts) {
  if (opts.provenance.empty()) return;
  out << "<!--\n";
  for (const auto& line : opts.provenance) out << line << '\n';
  out << "-->\n\n";
}

void markdown(std::ostream& out, const ReplicationTable& t, const TableOptions& opts) {
  provenance_comment(out, opts);
  out << "| Estimator | Param | Mean | SD | Bias | MC_SE | Failures |\n";
  out << "|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& r : t.rows)
    fmt::print(out, "| {} | {} | {:.4f} | {:.4f} | {:.4f} | {:.4f} | {} |\n", r.estimator, r.param, r.mean, r.sd,
               r.bias, r.mc_se, r.failures);
}

void column_markdown(std::ostream& out, const ReplicationTable& t, const TableOptions& opts) {
  provenance_comment(out, opts);
  std::vector<std::string> estimators, params;
  const auto add = [](std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (const auto& r : t.rows) {
    add(estimators, r.estimator);
    add(params, r.param);
  }
  out << "| |";
  for (const auto& e : estimators) out << ' ' << e << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < estimators.size(); ++i) out << "---:|";
  out << '\n';
  for (const auto& p : params) {
    for (const char* stat : {"Mean", "SD", "Bias"}) {
      fmt::print(out, "| {} {} |", p, stat);
      for (const auto& e : estimators) {
        const ReplicationRow& r = t.at(e, p);
        const double v = stat[0] == 'M' ? r.mean : stat[0] == 'S' ? r.sd : r.bias;
        fmt::print(out, " {:.3f} |", v);
      }
      out << '\n';
    }
  }
}

}  // namespace

void write_comment_lines(std::ostream& out, const std::vector<std::string>& entries) {
  for (const auto& entry : entries) {
    std::istringstream lines(entry);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
  }
}

void emit_table(std::ostream& out, const ReplicationTable& table, const TableOptions& opts) {
  if (opts.format == TableFormat::Csv)
    csv(out, table, opts);
  else if (opts.paper_layout)
    column_markdown(out, table, opts);
  else
    markdown(out, table, opts);
}

void emit_table(const std::string& path, const ReplicationTable& table, const TableOptions& opts) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot open " + path);
  emit_table(out, table, opts);
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path);
}

ReplicationTable parse_table_csv(std::istream& in) {
  ReplicationTable t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.rfind("# replications=", 0) == 0) {
      t.replications = std::stol(line.substr(15));
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      if (line.rfind("Estimator,", 0) != 0) throw Error(ErrorCode::IOFailure, "missing table header");
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string f[7];
    for (auto& field : f)
      if (!std::getline(ss, field, ',')) throw Error(ErrorCode::IOFailure, "short table row: " + line);
    ReplicationRow r;
    try {
      r.estimator = f[0];
      r.param = f[1];
      r.mean = std::stod(f[2]);
      r.sd = std::stod(f[3]);
      r.bias = std::stod(f[4]);
      r.mc_se = std::stod(f[5]);
      r.failures = std::stoul(f[6]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::IOFailure, "malformed table row: " + line);
    }
    r.truth = r.mean - r.bias;
    t.rows.push_back(r);
  }
  if (header) throw Error(ErrorCode::IOFailure, "missing table header");
  return t;
}

}  // namespace simest
