#include "mrperf/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mrperf {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw JsonError(std::string("invalid JSON: ") + e.what());
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw JsonError(std::string("unknown field '") + key + "' in " + what);
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json coeff_pair(double slope, double intercept) { return json::array({slope, intercept}); }

}  // namespace

std::string cluster_to_json(const ClusterProfile& c) {
  json gt;
  gt["read"] = coeff_pair(c.ground_truth.read_slope, c.ground_truth.read_intercept);
  gt["collect"] = coeff_pair(c.ground_truth.collect_slope, c.ground_truth.collect_intercept);
  gt["spill"] = coeff_pair(c.ground_truth.spill_slope, c.ground_truth.spill_intercept);
  gt["merge"] = coeff_pair(c.ground_truth.merge_slope, c.ground_truth.merge_intercept);
  gt["shuffle"] = json::array({c.ground_truth.shuffle_slope_data,
                               c.ground_truth.shuffle_slope_mappers,
                               c.ground_truth.shuffle_intercept});
  gt["write"] = coeff_pair(c.ground_truth.write_slope, c.ground_truth.write_intercept);

  json j;
  j["container_count"] = c.container_count;
  j["block_size_mb"] = c.block_size_mb;
  j["scheduler"] = "FIFO";
  j["ground_truth"] = std::move(gt);
  j["noise_sigma"] = c.noise_sigma;
  j["spill_buffer_mb"] = c.spill_buffer_mb;
  j["spill_threshold"] = c.spill_threshold;
  j["record_size_bytes"] = c.record_size_bytes;
  return j.dump(2) + "\n";
}

ClusterProfile cluster_from_json(const std::string& text) {
  const json j = parse_json(text);
  reject_unknown(j,
                 {"container_count", "block_size_mb", "scheduler", "ground_truth", "noise_sigma",
                  "spill_buffer_mb", "spill_threshold", "record_size_bytes"},
                 "ClusterProfile");
  ClusterProfile c;
  maybe(j, "container_count", c.container_count);
  maybe(j, "block_size_mb", c.block_size_mb);
  if (j.contains("scheduler")) {
    const auto s = j.at("scheduler").get<std::string>();
    if (s != "FIFO") throw JsonError("unsupported scheduler '" + s + "' (only FIFO)");
  }
  maybe(j, "noise_sigma", c.noise_sigma);
  maybe(j, "spill_buffer_mb", c.spill_buffer_mb);
  maybe(j, "spill_threshold", c.spill_threshold);
  maybe(j, "record_size_bytes", c.record_size_bytes);
  if (j.contains("ground_truth")) {
    const json& gt = j.at("ground_truth");
    reject_unknown(gt, {"read", "collect", "spill", "merge", "shuffle", "write"},
                   "GroundTruthCoefficients");
    const auto pair = [&](const char* key, double& slope, double& intercept) {
      if (!gt.contains(key)) return;
      const json& a = gt.at(key);
      if (!a.is_array() || a.size() != 2) {
        throw JsonError(std::string("ground_truth.") + key + " must be [slope, intercept]");
      }
      slope = a[0].get<double>();
      intercept = a[1].get<double>();
    };
    auto& g = c.ground_truth;
    pair("read", g.read_slope, g.read_intercept);
    pair("collect", g.collect_slope, g.collect_intercept);
    pair("spill", g.spill_slope, g.spill_intercept);
    pair("merge", g.merge_slope, g.merge_intercept);
    pair("write", g.write_slope, g.write_intercept);
    if (gt.contains("shuffle")) {
      const json& a = gt.at("shuffle");
      if (!a.is_array() || a.size() != 3) {
        throw JsonError("ground_truth.shuffle must be [slope_data, slope_mappers, intercept]");
      }
      g.shuffle_slope_data = a[0].get<double>();
      g.shuffle_slope_mappers = a[1].get<double>();
      g.shuffle_intercept = a[2].get<double>();
    }
  }
  c.validate();
  return c;
}

std::string workload_to_json(const WorkloadSpec& w) {
  json j;
  j["name"] = w.name;
  j["input_mb"] = w.input_mb;
  j["map_selectivity"] = w.map_selectivity;
  j["reduce_selectivity"] = w.reduce_selectivity;
  j["reducer_count"] = w.reducer_count;
  j["map_ms_per_record"] = w.map_ms_per_record;
  j["reduce_ms_per_key"] = w.reduce_ms_per_key;
  j["keys_per_mb"] = w.keys_per_mb;
  j["design_pattern"] = pattern_name(w.design_pattern);
  return j.dump(2) + "\n";
}

WorkloadSpec workload_from_json(const std::string& text) {
  const json j = parse_json(text);
  reject_unknown(j,
                 {"name", "input_mb", "map_selectivity", "reduce_selectivity", "reducer_count",
                  "map_ms_per_record", "reduce_ms_per_key", "keys_per_mb", "design_pattern"},
                 "WorkloadSpec");
  WorkloadSpec w;
  maybe(j, "name", w.name);
  maybe(j, "input_mb", w.input_mb);
  maybe(j, "map_selectivity", w.map_selectivity);
  maybe(j, "reduce_selectivity", w.reduce_selectivity);
  maybe(j, "reducer_count", w.reducer_count);
  maybe(j, "map_ms_per_record", w.map_ms_per_record);
  maybe(j, "reduce_ms_per_key", w.reduce_ms_per_key);
  maybe(j, "keys_per_mb", w.keys_per_mb);
  if (j.contains("design_pattern")) {
    w.design_pattern = pattern_from_name(j.at("design_pattern").get<std::string>());
  }
  w.validate();
  return w;
}

std::string sweep_to_json(const SweepConfig& s) {
  json j;
  j["input_mb_start"] = s.input_mb_start;
  j["input_mb_end"] = s.input_mb_end;
  j["input_mb_step"] = s.input_mb_step;
  j["map_selectivities"] = s.map_selectivities;
  j["block_sizes_mb"] = s.block_sizes_mb;
  j["repetitions"] = s.repetitions;
  return j.dump(2) + "\n";
}

SweepConfig sweep_from_json(const std::string& text) {
  const json j = parse_json(text);
  reject_unknown(j,
                 {"input_mb_start", "input_mb_end", "input_mb_step", "map_selectivities",
                  "block_sizes_mb", "repetitions"},
                 "SweepConfig");
  SweepConfig s;
  maybe(j, "input_mb_start", s.input_mb_start);
  maybe(j, "input_mb_end", s.input_mb_end);
  maybe(j, "input_mb_step", s.input_mb_step);
  maybe(j, "map_selectivities", s.map_selectivities);
  maybe(j, "block_sizes_mb", s.block_sizes_mb);
  maybe(j, "repetitions", s.repetitions);
  return s;
}

std::string models_to_json(const PhaseModelSet& set) {
  json phases;
  for (const auto& [phase, model] : set.models) {
    json m;
    m["features"] = model.fit.feature_names;
    m["coefficients"] = model.fit.coefficients;
    m["intercept"] = model.fit.intercept;
    m["stderrs"] = model.fit.stderrs;
    m["p_values"] = model.fit.p_values;
    m["rmse_ms"] = model.fit.rmse_ms;
    m["r_squared"] = model.fit.r_squared;
    m["adj_r_squared"] = model.fit.adj_r_squared;
    m["n_samples"] = model.fit.n_samples;
    m["dropped_features"] = model.fit.dropped_features;
    m["removal_order"] = model.fit.removal_order;
    m["cv_k"] = model.cv.k;
    m["cv_fold_rmses"] = model.cv.fold_rmses;
    m["cv_mean_rmse"] = model.cv.mean_rmse;
    phases[phase_name(phase)] = std::move(m);
  }
  json j;
  j["units"] = set.units;
  j["phases"] = std::move(phases);
  return j.dump(2) + "\n";
}

PhaseModelSet models_from_json(const std::string& text) {
  const json j = parse_json(text);
  reject_unknown(j, {"units", "phases"}, "PhaseModelSet");
  PhaseModelSet set;
  maybe(j, "units", set.units);
  if (!j.contains("phases")) throw JsonError("PhaseModelSet: missing 'phases'");
  for (const auto& [name, m] : j.at("phases").items()) {
    PhaseModel model;
    model.phase = phase_from_name(name);
    model.fit.feature_names = m.at("features").get<std::vector<std::string>>();
    model.fit.coefficients = m.at("coefficients").get<std::vector<double>>();
    model.fit.intercept = m.at("intercept").get<double>();
    if (m.contains("stderrs")) model.fit.stderrs = m.at("stderrs").get<std::vector<double>>();
    if (m.contains("p_values")) model.fit.p_values = m.at("p_values").get<std::vector<double>>();
    if (m.contains("rmse_ms")) model.fit.rmse_ms = m.at("rmse_ms").get<double>();
    if (m.contains("r_squared")) model.fit.r_squared = m.at("r_squared").get<double>();
    if (m.contains("adj_r_squared")) {
      model.fit.adj_r_squared = m.at("adj_r_squared").get<double>();
    }
    if (m.contains("n_samples")) model.fit.n_samples = m.at("n_samples").get<int>();
    if (m.contains("dropped_features")) {
      model.fit.dropped_features = m.at("dropped_features").get<std::vector<std::string>>();
    }
    if (m.contains("removal_order")) {
      model.fit.removal_order = m.at("removal_order").get<std::vector<std::string>>();
    }
    if (m.contains("cv_k")) model.cv.k = m.at("cv_k").get<int>();
    if (m.contains("cv_fold_rmses")) {
      model.cv.fold_rmses = m.at("cv_fold_rmses").get<std::vector<double>>();
    }
    if (m.contains("cv_mean_rmse")) model.cv.mean_rmse = m.at("cv_mean_rmse").get<double>();
    set.models[model.phase] = std::move(model);
  }
  set.validate();
  return set;
}

std::string suite_to_json(const std::vector<SuiteEntry>& suite) {
  json arr = json::array();
  for (const SuiteEntry& e : suite) {
    json entry;
    entry["workload"] = json::parse(workload_to_json(e.workload));
    entry["pattern"] = pattern_name(e.pattern);
    entry["notes"] = e.notes;
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

std::vector<SuiteEntry> suite_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw JsonError("suite JSON must be an array of entries");
  std::vector<SuiteEntry> suite;
  for (const json& item : j) {
    reject_unknown(item, {"workload", "pattern", "notes"}, "SuiteEntry");
    SuiteEntry e;
    e.workload = workload_from_json(item.at("workload").dump());
    e.pattern = pattern_from_name(item.at("pattern").get<std::string>());
    if (item.contains("notes")) e.notes = item.at("notes").get<std::string>();
    suite.push_back(std::move(e));
  }
  return suite;
}

std::string prediction_to_json(const JobPrediction& p) {
  json j;
  j["workload"] = p.workload_name;
  json map_phase, reduce_phase, breakdown;
  for (const auto& [phase, ms] : p.map_task_phase_ms) map_phase[phase_name(phase)] = ms;
  for (const auto& [phase, ms] : p.reduce_task_phase_ms) reduce_phase[phase_name(phase)] = ms;
  for (const auto& [phase, ms] : p.breakdown) breakdown[phase_name(phase)] = ms;
  j["map_task_phase_ms"] = std::move(map_phase);
  j["reduce_task_phase_ms"] = std::move(reduce_phase);
  j["map_task_ms"] = p.map_task_ms;
  j["reduce_task_ms"] = p.reduce_task_ms;
  j["map_waves"] = p.map_waves;
  j["reduce_waves"] = p.reduce_waves;
  j["total_ms"] = p.total_ms;
  j["breakdown_ms"] = std::move(breakdown);
  j["clamped_negative"] = p.clamped_negative;
  return j.dump(2) + "\n";
}

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["seed"] = m.seed;
  j["output_dir"] = m.output_dir;
  j["tool_version"] = m.tool_version;
  j["argv"] = m.argv;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  const json j = parse_json(text);
  reject_unknown(j, {"command", "inputs", "seed", "output_dir", "tool_version", "argv"},
                 "RunManifest");
  RunManifest m;
  maybe(j, "command", m.command);
  maybe(j, "inputs", m.inputs);
  maybe(j, "seed", m.seed);
  maybe(j, "output_dir", m.output_dir);
  maybe(j, "tool_version", m.tool_version);
  maybe(j, "argv", m.argv);
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw JsonError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw JsonError("cannot write file: " + path);
  out << content;
}

}  // namespace mrperf
