#include "mrperf/profiler.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "mrperf/domain.hpp"
#include "mrperf/rng.hpp"
#include "mrperf/simcluster.hpp"

namespace mrperf {

std::size_t SampleSet::count(Phase p) const {
  const auto it = by_phase.find(p);
  return it == by_phase.end() ? 0 : it->second.size();
}

std::vector<BenchmarkPoint> build_grid(const SweepConfig& config, std::int64_t seed) {
  if (!(config.input_mb_start > 0.0) || !(config.input_mb_step > 0.0) ||
      config.input_mb_end < config.input_mb_start) {
    throw ConfigError("build_grid: invalid input size range");
  }
  if (config.map_selectivities.empty()) throw ConfigError("build_grid: no map selectivities");
  if (config.block_sizes_mb.empty()) throw ConfigError("build_grid: no block sizes");
  if (config.repetitions < 1) throw ConfigError("build_grid: repetitions must be >= 1");

  std::vector<BenchmarkPoint> grid;
  for (megabytes d = config.input_mb_start; d <= config.input_mb_end + 1e-9;
       d += config.input_mb_step) {
    for (double sel : config.map_selectivities) {
      for (megabytes b : config.block_sizes_mb) {
        BenchmarkPoint pt;
        pt.input_mb = d;
        pt.map_selectivity = sel;
        pt.block_size_mb = b;
        pt.repetitions = config.repetitions;
        pt.seed = static_cast<std::int64_t>(
            rng::key(static_cast<std::uint64_t>(seed), std::bit_cast<std::uint64_t>(d),
                     std::bit_cast<std::uint64_t>(sel), std::bit_cast<std::uint64_t>(b)));
        grid.push_back(pt);
      }
    }
  }
  return grid;
}

int generic_reducer_count(int total_mappers, int container_count) {
  const int r = (total_mappers + 2) / 3;  // ceil(M_t / 3)
  return std::min(r, container_count);
}

SampleSet run_profile(const ClusterProfile& cluster, const std::vector<BenchmarkPoint>& grid) {
  cluster.validate();
  SampleSet out;
  for (const BenchmarkPoint& pt : grid) {
    if (!block_size_supported(pt.block_size_mb)) {
      throw ConfigError(fmt::format("run_profile: unsupported block size {} at point D={}",
                                    pt.block_size_mb, pt.input_mb));
    }
    ClusterProfile point_cluster = cluster;
    point_cluster.block_size_mb = pt.block_size_mb;

    for (int rep = 0; rep < pt.repetitions; ++rep) {
      WorkloadSpec generic;
      generic.name = fmt::format("bm_d{}_s{}_b{}_r{}", format_number(pt.input_mb),
                                 format_number(pt.map_selectivity),
                                 format_number(pt.block_size_mb), rep);
      generic.input_mb = pt.input_mb;
      generic.map_selectivity = pt.map_selectivity;
      generic.reduce_selectivity = 1.0;  // the generic reducer passes data through
      const int mappers =
          static_cast<int>(std::ceil(pt.input_mb / pt.block_size_mb));
      generic.reducer_count = generic_reducer_count(mappers, cluster.container_count);
      generic.design_pattern = DesignPattern::Generic;

      const auto job_seed = static_cast<std::int64_t>(
          rng::key(static_cast<std::uint64_t>(pt.seed), static_cast<std::uint64_t>(rep)));
      JobTrace trace;
      try {
        trace = simulate_job(point_cluster, generic, job_seed);
      } catch (const std::exception& e) {
        throw ConfigError(fmt::format("run_profile: point D={} M_sel={} B={} failed: {}",
                                      pt.input_mb, pt.map_selectivity, pt.block_size_mb,
                                      e.what()));
      }
      const JobTrace parsed = parse_log(emit_log(trace));
      for (PhaseSample& s : extract_samples(parsed)) {
        out.by_phase[s.phase].push_back(std::move(s));
      }
      out.provenance.emplace_back(pt, parsed.job_id);
    }
  }
  return out;
}

std::string phase_csv_filename(Phase p) {
  std::string name = phase_name(p);
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return name + ".csv";
}

void write_sample_csvs(const SampleSet& samples, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (Phase p : kFrameworkPhases) {
    std::ofstream out(std::filesystem::path(dir) / phase_csv_filename(p),
                      std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("write_sample_csvs: cannot open output in " + dir);
    std::string header;
    for (const auto& f : phase_feature_names(p)) header += f + ",";
    out << header << "target_ms,job_id\n";
    const auto it = samples.by_phase.find(p);
    if (it == samples.by_phase.end()) continue;
    for (const PhaseSample& s : it->second) {
      for (double f : s.features) out << format_number(f) << ',';
      out << format_number(s.target_ms) << ',' << s.job_id << '\n';
    }
  }
}

SampleSet load_sample_csvs(const std::string& dir) {
  SampleSet out;
  for (Phase p : kFrameworkPhases) {
    const auto path = std::filesystem::path(dir) / phase_csv_filename(p);
    std::ifstream in(path);
    if (!in) throw ConfigError("load_sample_csvs: missing " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("load_sample_csvs: empty " + path.string());
    const std::size_t n_features = phase_feature_names(p).size();
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() != n_features + 2) {
        throw ConfigError(fmt::format("{}:{}: expected {} columns", path.string(), line_no,
                                      n_features + 2));
      }
      PhaseSample s;
      s.phase = p;
      for (std::size_t i = 0; i < n_features + 1; ++i) {
        double v = 0.0;
        const auto& c = cells[i];
        auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
        if (ec != std::errc{} || ptr != c.data() + c.size()) {
          throw ConfigError(fmt::format("{}:{}: bad number '{}'", path.string(), line_no, c));
        }
        if (i < n_features) {
          s.features.push_back(v);
        } else {
          s.target_ms = v;
        }
      }
      s.job_id = cells.back();
      out.by_phase[p].push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace mrperf
