#include "mrperf/types.hpp"

#include <algorithm>

namespace mrperf {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Read: return "READ";
    case Phase::Map: return "MAP";
    case Phase::Collect: return "COLLECT";
    case Phase::Spill: return "SPILL";
    case Phase::Merge: return "MERGE";
    case Phase::Shuffle: return "SHUFFLE";
    case Phase::Reduce: return "REDUCE";
    case Phase::Write: return "WRITE";
  }
  throw InvalidInput("unknown phase enumerator");
}

Phase phase_from_name(const std::string& name) {
  for (Phase p : {Phase::Read, Phase::Map, Phase::Collect, Phase::Spill, Phase::Merge,
                  Phase::Shuffle, Phase::Reduce, Phase::Write}) {
    if (name == phase_name(p)) return p;
  }
  throw InvalidInput("unknown phase name: " + name);
}

const char* pattern_name(DesignPattern p) {
  switch (p) {
    case DesignPattern::Summarisation: return "Summarisation";
    case DesignPattern::Filtering: return "Filtering";
    case DesignPattern::DataOrganisation: return "DataOrganisation";
    case DesignPattern::Join: return "Join";
    case DesignPattern::Generic: return "Generic";
  }
  throw InvalidInput("unknown design pattern enumerator");
}

DesignPattern pattern_from_name(const std::string& name) {
  for (DesignPattern p : {DesignPattern::Summarisation, DesignPattern::Filtering,
                          DesignPattern::DataOrganisation, DesignPattern::Join,
                          DesignPattern::Generic}) {
    if (name == pattern_name(p)) return p;
  }
  throw InvalidInput("unknown design pattern: " + name);
}

void GroundTruthCoefficients::validate() const {
  const double values[] = {read_slope,    read_intercept,   collect_slope,
                           collect_intercept, spill_slope,  spill_intercept,
                           merge_slope,   merge_intercept,  shuffle_slope_data,
                           shuffle_slope_mappers, shuffle_intercept, write_slope,
                           write_intercept};
  for (double v : values) {
    if (!(v >= 0.0)) throw InvalidInput("ground-truth slopes and intercepts must be >= 0");
  }
}

bool block_size_supported(megabytes block_mb) {
  for (double b : {32.0, 64.0, 128.0, 256.0, 512.0}) {
    if (block_mb == b) return true;
  }
  return false;
}

void ClusterProfile::validate() const {
  if (container_count < 1) throw InvalidInput("container_count must be >= 1");
  if (!(block_size_mb > 0.0)) throw InvalidInput("block_size_mb must be > 0");
  if (!block_size_supported(block_size_mb)) {
    throw InvalidInput("unsupported block_size_mb: " + std::to_string(block_size_mb));
  }
  if (!(noise_sigma >= 0.0)) throw InvalidInput("noise_sigma must be >= 0");
  if (!(spill_buffer_mb > 0.0)) throw InvalidInput("spill_buffer_mb must be > 0");
  if (!(spill_threshold > 0.0 && spill_threshold <= 1.0)) {
    throw InvalidInput("spill_threshold must be in (0, 1]");
  }
  if (record_size_bytes < 1) throw InvalidInput("record_size_bytes must be >= 1");
  ground_truth.validate();
}

void WorkloadSpec::validate() const {
  if (!(input_mb > 0.0)) throw InvalidInput("input_mb must be > 0");
  if (!(map_selectivity >= 0.0 && map_selectivity <= 1.0)) {
    throw InvalidInput("map_selectivity must be in [0, 1]");
  }
  if (!(reduce_selectivity >= 0.0)) throw InvalidInput("reduce_selectivity must be >= 0");
  if (reducer_count < 0) throw InvalidInput("reducer_count must be >= 0");
  if (!(map_ms_per_record >= 0.0)) throw InvalidInput("map_ms_per_record must be >= 0");
  if (!(reduce_ms_per_key >= 0.0)) throw InvalidInput("reduce_ms_per_key must be >= 0");
  if (!(keys_per_mb > 0.0)) throw InvalidInput("keys_per_mb must be > 0");
}

}  // namespace mrperf
