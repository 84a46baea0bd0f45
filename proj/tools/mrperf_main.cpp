#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fmt/format.h>
#include <iostream>
#include <string>
#include <vector>

#include "mrperf/benchsuite.hpp"
#include "mrperf/json_io.hpp"
#include "mrperf/models.hpp"
#include "mrperf/predictor.hpp"
#include "mrperf/profiler.hpp"
#include "mrperf/regress.hpp"
#include "mrperf/rng.hpp"
#include "mrperf/simcluster.hpp"
#include "mrperf/tracelog.hpp"

namespace {

constexpr const char* kToolVersion = "mrperf 0.1.0";

// Exit-code contract: 0 ok, 2 input, 3 data, 4 usage, 5 gate.
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitData = 3;
constexpr int kExitUsage = 4;
constexpr int kExitGate = 5;

using namespace mrperf;

void write_manifest(const std::string& command, const std::vector<std::string>& inputs,
                    std::int64_t seed, const std::string& out_dir,
                    const std::vector<std::string>& argv) {
  RunManifest m;
  m.command = command;
  m.inputs = inputs;
  m.seed = seed;
  m.output_dir = out_dir;
  m.tool_version = kToolVersion;
  m.argv = argv;
  write_text_file((std::filesystem::path(out_dir) / "manifest.json").string(),
                  manifest_to_json(m));
}

int cmd_simulate(const std::string& cluster_path, const std::string& workload_path,
                 std::int64_t seed, const std::string& out_dir,
                 const std::vector<std::string>& argv) {
  const ClusterProfile cluster = cluster_from_json(read_text_file(cluster_path));
  const WorkloadSpec workload = workload_from_json(read_text_file(workload_path));
  const JobTrace trace = simulate_job(cluster, workload, seed);
  const auto log_path = std::filesystem::path(out_dir) / (trace.job_id + ".log");
  write_text_file(log_path.string(), emit_log(trace).text());
  write_manifest("simulate", {cluster_path, workload_path}, seed, out_dir, argv);
  std::cout << fmt::format("simulated {}: {} tasks, total_ms={}\n", trace.job_id,
                           trace.tasks.size(), format_number(trace.total_ms));
  std::cout << "log: " << log_path.string() << "\n";
  return kExitOk;
}

int cmd_profile(const std::string& cluster_path, const std::string& sweep_path,
                std::int64_t seed, const std::string& out_dir,
                const std::vector<std::string>& argv) {
  const ClusterProfile cluster = cluster_from_json(read_text_file(cluster_path));
  const SweepConfig sweep =
      sweep_path.empty() ? SweepConfig{} : sweep_from_json(read_text_file(sweep_path));
  const auto grid = build_grid(sweep, seed);
  const SampleSet samples = run_profile(cluster, grid);
  write_sample_csvs(samples, out_dir);
  write_manifest("profile", {cluster_path, sweep_path}, seed, out_dir, argv);
  std::cout << fmt::format("profiled {} benchmark points\n", grid.size());
  for (Phase p : kFrameworkPhases) {
    std::cout << fmt::format("{:<8} {} samples\n", phase_name(p), samples.count(p));
  }
  return kExitOk;
}

int cmd_fit(const std::string& samples_dir, const std::string& models_path, std::int64_t seed,
            const std::vector<std::string>& argv) {
  SampleSet samples;
  try {
    samples = load_sample_csvs(samples_dir);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }
  const PhaseModelSet models = fit_phase_models(samples, 10, seed);
  write_text_file(models_path, models_to_json(models));
  const auto out_dir = std::filesystem::path(models_path).parent_path().string();
  write_manifest("fit", {samples_dir}, seed, out_dir.empty() ? "." : out_dir, argv);

  for (Phase p : kFrameworkPhases) {
    const PhaseModel& m = models.at(p);
    std::string terms;
    for (std::size_t i = 0; i < m.fit.feature_names.size(); ++i) {
      terms += fmt::format("{:.4f}*{} + ", m.fit.coefficients[i], m.fit.feature_names[i]);
    }
    std::cout << fmt::format("{:<8} target_ms = {}{:.4f} | rmse={:.3f} R2={:.4f} adjR2={:.4f}\n",
                             phase_name(p), terms, m.fit.intercept, m.fit.rmse_ms,
                             m.fit.r_squared, m.fit.adj_r_squared);
    std::cout << fmt::format("         10-fold CV mean RMSE = {:.3f} ms over {} samples\n",
                             m.cv.mean_rmse, m.fit.n_samples);
    if (!m.fit.dropped_features.empty() || !m.fit.removal_order.empty()) {
      std::cout << "         dropped:";
      for (const auto& f : m.fit.dropped_features) std::cout << " " << f << "(zero-variance)";
      for (const auto& f : m.fit.removal_order) std::cout << " " << f << "(p>alpha)";
      std::cout << "\n";
    }
  }
  std::cout << "models written to " << models_path << "\n";
  return kExitOk;
}

int cmd_predict(const std::string& models_path, const std::string& workload_path,
                const std::string& cluster_path, double tmap_ms, double treduce_ms,
                bool has_tmap, bool has_treduce, const std::string& from_log,
                std::int64_t seed, const std::string& out_dir,
                const std::vector<std::string>& argv) {
  const PhaseModelSet models = models_from_json(read_text_file(models_path));
  const WorkloadSpec workload = workload_from_json(read_text_file(workload_path));
  const ClusterProfile cluster = cluster_from_json(read_text_file(cluster_path));

  CustomTimes custom;
  if (!from_log.empty()) {
    const JobTrace ref = parse_log(LogDocument::from_text(read_text_file(from_log)));
    double map_sum = 0.0;
    double reduce_sum = 0.0;
    for (const TaskTrace& t : ref.tasks) {
      if (auto it = t.phase_ms.find(Phase::Map); it != t.phase_ms.end()) map_sum += it->second;
      if (auto it = t.phase_ms.find(Phase::Reduce); it != t.phase_ms.end()) {
        reduce_sum += it->second;
      }
    }
    // The logged MAP/REDUCE phase times are the composed per-task terms;
    // scale back to total function time.
    custom = CustomTimes::from_totals(map_sum * ref.container_count,
                                      reduce_sum * ref.container_count);
  } else if (has_tmap || has_treduce) {
    custom = CustomTimes::from_totals(
        has_tmap ? std::optional<milliseconds>(tmap_ms) : std::nullopt,
        has_treduce ? std::optional<milliseconds>(treduce_ms) : std::nullopt);
  } else {
    std::cerr << "predict: no custom-time source; pass --tmap-ms (and --treduce-ms for jobs "
                 "with reducers) or --from-log <reference log>\n";
    return kExitUsage;
  }

  const JobPrediction prediction = predict_job(models, workload, cluster, custom);
  write_text_file((std::filesystem::path(out_dir) / "prediction.json").string(),
                  prediction_to_json(prediction));
  write_manifest("predict", {models_path, workload_path, cluster_path}, seed, out_dir, argv);
  std::cout << prediction_table(prediction);
  return kExitOk;
}

int cmd_evaluate(const std::string& models_path, const std::string& cluster_path,
                 const std::string& suite_path, std::int64_t seed, double gate,
                 const std::string& out_dir, const std::vector<std::string>& argv) {
  const PhaseModelSet models = models_from_json(read_text_file(models_path));
  const ClusterProfile cluster = cluster_from_json(read_text_file(cluster_path));
  const std::vector<SuiteEntry> suite =
      suite_path.empty() ? default_suite() : suite_from_json(read_text_file(suite_path));

  std::vector<std::int64_t> seeds;
  for (int i = 0; i < 5; ++i) {
    seeds.push_back(static_cast<std::int64_t>(
        rng::key(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(i))));
  }
  const SuiteReport report = run_suite(models, cluster, suite, seeds);
  write_text_file((std::filesystem::path(out_dir) / "report.csv").string(), report.to_csv());
  write_text_file((std::filesystem::path(out_dir) / "report.md").string(), report.to_markdown());
  write_text_file((std::filesystem::path(out_dir) / "breakdown.csv").string(),
                  report.breakdown_csv());
  write_manifest("evaluate", {models_path, cluster_path, suite_path}, seed, out_dir, argv);
  std::cout << report.to_markdown();
  if (report.mean_abs_error_pct > gate) {
    std::cerr << fmt::format("gate breach: mean |Error%| {:.2f} > {:.2f}\n",
                             report.mean_abs_error_pct, gate);
    return kExitGate;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, int depth);

int cmd_rerun(const std::string& manifest_path, int depth) {
  if (depth > 0) {
    std::cerr << "rerun: nested rerun is not allowed\n";
    return kExitUsage;
  }
  const RunManifest m = manifest_from_json(read_text_file(manifest_path));
  if (m.argv.empty() || m.argv.front() == "rerun") {
    std::cerr << "rerun: manifest has no replayable argv\n";
    return kExitUsage;
  }
  return run(m.argv, depth + 1);
}

int run(const std::vector<std::string>& args, int depth) {
  CLI::App app{"MapReduce phase-level cost modelling toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string cluster_path, workload_path, sweep_path, models_path, suite_path, samples_dir;
  std::string from_log, manifest_path;
  std::string out_dir = ".";
  std::int64_t seed = 42;
  double gate = 10.0;
  double tmap_ms = 0.0, treduce_ms = 0.0;

  auto* sim = app.add_subcommand("simulate", "simulate one job and write its log");
  sim->add_option("--cluster", cluster_path)->required();
  sim->add_option("--workload", workload_path)->required();
  sim->add_option("--seed", seed);
  sim->add_option("--out", out_dir);

  auto* prof = app.add_subcommand("profile", "run the benchmark grid, write per-phase CSVs");
  prof->add_option("--cluster", cluster_path)->required();
  prof->add_option("--sweep", sweep_path);
  prof->add_option("--seed", seed);
  prof->add_option("--out", out_dir);

  auto* fit = app.add_subcommand("fit", "fit phase models from profiled samples");
  fit->add_option("--samples", samples_dir)->required();
  fit->add_option("--models", models_path)->required();
  fit->add_option("--seed", seed);

  auto* pred = app.add_subcommand("predict", "predict one workload's completion time");
  pred->add_option("--models", models_path)->required();
  pred->add_option("--workload", workload_path)->required();
  pred->add_option("--cluster", cluster_path)->required();
  auto* tmap_opt = pred->add_option("--tmap-ms", tmap_ms, "measured total map() fn time");
  auto* tred_opt = pred->add_option("--treduce-ms", treduce_ms, "measured total reduce() fn time");
  pred->add_option("--from-log", from_log, "reference-run log to extract custom times from");
  pred->add_option("--seed", seed);
  pred->add_option("--out", out_dir);

  auto* eval = app.add_subcommand("evaluate", "run the workload suite and gate on mean error");
  eval->add_option("--models", models_path)->required();
  eval->add_option("--cluster", cluster_path)->required();
  eval->add_option("--suite", suite_path);
  eval->add_option("--seed", seed);
  eval->add_option("--gate", gate, "mean |Error%| gate (default 10)");
  eval->add_option("--out", out_dir);

  auto* rerun = app.add_subcommand("rerun", "replay a command from its manifest");
  rerun->add_option("manifest", manifest_path)->required();

  try {
    // CLI11 parses back-to-front; keep declared order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cluster_path, workload_path, seed, out_dir, args);
    if (prof->parsed()) return cmd_profile(cluster_path, sweep_path, seed, out_dir, args);
    if (fit->parsed()) return cmd_fit(samples_dir, models_path, seed, args);
    if (pred->parsed()) {
      return cmd_predict(models_path, workload_path, cluster_path, tmap_ms, treduce_ms,
                         tmap_opt->count() > 0, tred_opt->count() > 0, from_log, seed, out_dir,
                         args);
    }
    if (eval->parsed()) {
      return cmd_evaluate(models_path, cluster_path, suite_path, seed, gate, out_dir, args);
    }
    if (rerun->parsed()) return cmd_rerun(manifest_path, depth);
  } catch (const MissingInputError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientDataError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, 0);
}
