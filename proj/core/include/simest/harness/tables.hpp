#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simest/harness/replication.hpp"

namespace simest {

enum class TableFormat { Csv, Markdown };

struct TableOptions {
  TableFormat format = TableFormat::Csv;
  /// Markdown only: estimators as columns, Mean/SD/Bias rows per parameter.
  bool paper_layout = false;
  /// Written first as '#' comment lines (CSV) or an HTML comment (markdown).
  std::vector<std::string> provenance;
};

/// Columns Estimator, Param, Mean, SD, Bias, MC_SE, Failures. Numbers use the
/// shortest round-trip form with '.' as decimal separator. CSV output also
/// carries a '# replications=R' comment line.
void emit_table(std::ostream& out, const ReplicationTable& table, const TableOptions& opts = {});
/// Throws IOFailure.
void emit_table(const std::string& path, const ReplicationTable& table, const TableOptions& opts = {});

/// Writes each line of each entry as a '# ' comment line.
void write_comment_lines(std::ostream& out, const std::vector<std::string>& entries);

/// Parses the CSV form; comment lines are skipped, truth is recovered from
/// Mean - Bias and the replication count from its comment line.
/// Throws IOFailure.
ReplicationTable parse_table_csv(std::istream& in);

}  // namespace simest
