#pragma once

#include <string>
#include <vector>

#include "mrperf/simcluster.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

// One YARN-style job log: one record per line, space separated.
//   JOB <job_id> START containers=<int> block_mb=<num>
//   TASK <task_id> kind=<MAP|REDUCE> wave=<int>
//   COUNTER <task_id> <GROUP>.<NAME>=<num>
//   JOB <job_id> END total_ms=<num>
// GROUP is PHASE_MS, DATA_MB or META.
struct LogDocument {
  std::vector<std::string> lines;

  std::string text() const;
  static LogDocument from_text(const std::string& text);
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One (task, phase) observation: raw feature volumes plus the measured
// duration. The regression recipe turns raw features into design columns.
struct PhaseSample {
  Phase phase = Phase::Read;
  std::vector<double> features;
  milliseconds target_ms = 0.0;
  std::string job_id;
};

LogDocument emit_log(const JobTrace& trace);

// Reconstructs a JobTrace from a log document. Unknown line types are
// skipped and counted into *skipped_lines when provided. Malformed COUNTER
// lines and a missing JOB END footer raise ParseError.
JobTrace parse_log(const LogDocument& doc, int* skipped_lines = nullptr);

// One sample per executed (task, phase). Merge samples are emitted only for
// tasks whose merge actually ran (a lone under-threshold spill file skips it).
std::vector<PhaseSample> extract_samples(const JobTrace& trace);

// Number of raw feature columns and their names for a phase's samples.
std::vector<std::string> phase_feature_names(Phase phase);

// Shortest decimal representation that parses back to the same double.
std::string format_number(double v);

}  // namespace mrperf
