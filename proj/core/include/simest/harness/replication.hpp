#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simest/harness/config.hpp"

namespace simest {

struct ReplicationRow {
  std::string estimator;
  std::string param;
  double truth = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double bias = 0.0;   // mean - truth
  double mc_se = 0.0;  // sd / sqrt(successful replications)
  std::size_t failures = 0;
  double wall_seconds = 0.0;
};

/// Rows compare equal on the persisted columns (truth and wall-clock time
/// are not compared).
bool operator==(const ReplicationRow& a, const ReplicationRow& b);

struct ReplicationTable {
  std::vector<ReplicationRow> rows;
  Index replications = 0;

  const ReplicationRow& at(const std::string& estimator, const std::string& param) const;
  friend bool operator==(const ReplicationTable&, const ReplicationTable&) = default;
};

/// Per-replication point estimates, NaN rows where the estimator failed.
struct ReplicationOutcome {
  ReplicationTable table;
  std::vector<std::string> labels;
  std::vector<Matrix> estimates;  // one R x K matrix per estimator
};

/// Runs every configured estimator on R independent datasets. Replication r
/// observes data from stream (master_seed, r).child(0); estimator streams are
/// keyed by label. Results do not depend on the thread count. An estimator
/// failing on more than 5% of replications aborts with TooManyFailures.
ReplicationOutcome run_replications_detailed(const ExperimentConfig& cfg, unsigned threads = 1);
ReplicationTable run_replications(const ExperimentConfig& cfg, unsigned threads = 1);

}  // namespace simest
