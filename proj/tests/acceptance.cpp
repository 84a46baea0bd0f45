// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each check is self-contained and deterministic.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrperf/benchsuite.hpp"
#include "mrperf/domain.hpp"
#include "mrperf/json_io.hpp"
#include "mrperf/models.hpp"
#include "mrperf/predictor.hpp"
#include "mrperf/profiler.hpp"
#include "mrperf/regress.hpp"
#include "mrperf/rng.hpp"
#include "mrperf/simcluster.hpp"
#include "mrperf/tracelog.hpp"

using namespace mrperf;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : " — ",
              detail.c_str());
  if (!ok) ++failures;
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

std::vector<std::pair<Phase, std::vector<double>>> truth_rows(const GroundTruthCoefficients& g) {
  return {
      {Phase::Read, {g.read_slope, g.read_intercept}},
      {Phase::Collect, {g.collect_slope, g.collect_intercept}},
      {Phase::Spill, {g.spill_slope, g.spill_intercept}},
      {Phase::Merge, {g.merge_slope, g.merge_intercept}},
      {Phase::Shuffle, {g.shuffle_slope_data, g.shuffle_slope_mappers, g.shuffle_intercept}},
      {Phase::Write, {g.write_slope, g.write_intercept}},
  };
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Noise-free coefficient recovery to 1e-6 relative, under 10 s.
void criterion_recovery_noise_free() {
  const auto t0 = std::chrono::steady_clock::now();
  ClusterProfile cluster;
  cluster.noise_sigma = 0.0;
  const SampleSet samples = run_profile(cluster, build_grid(SweepConfig{}, 42));
  const PhaseModelSet models = fit_phase_models(samples);

  double worst = 0.0;
  bool shape_ok = true;
  for (const auto& [p, want] : truth_rows(cluster.ground_truth)) {
    const auto& fit = models.at(p).fit;
    if (fit.coefficients.size() + 1 != want.size()) {
      shape_ok = false;
      continue;
    }
    for (std::size_t i = 0; i + 1 < want.size(); ++i) {
      worst = std::max(worst, rel(fit.coefficients[i], want[i]));
    }
    worst = std::max(worst, rel(fit.intercept, want.back()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("coefficient recovery, noise-free (1e-6 relative, <10 s)",
         shape_ok && worst < 1e-6 && secs < 10.0,
         "worst rel err " + std::to_string(worst) + ", " + std::to_string(secs) + " s");
}

// 2. Noisy recovery: every slope within 10% relative across 5 seeds, <60 s.
void criterion_recovery_noisy() {
  const auto t0 = std::chrono::steady_clock::now();
  ClusterProfile cluster;  // sigma = 0.05
  double worst = 0.0;
  bool shape_ok = true;
  for (std::int64_t seed = 1; seed <= 5; ++seed) {
    const SampleSet samples = run_profile(cluster, build_grid(SweepConfig{}, seed));
    const PhaseModelSet models = fit_phase_models(samples, 10, seed);
    for (const auto& [p, want] : truth_rows(cluster.ground_truth)) {
      const auto& fit = models.at(p).fit;
      if (fit.coefficients.size() + 1 != want.size()) {
        shape_ok = false;
        continue;
      }
      for (std::size_t i = 0; i + 1 < want.size(); ++i) {
        worst = std::max(worst, rel(fit.coefficients[i], want[i]));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report("coefficient recovery, sigma=0.05 x 5 seeds (slopes within 10%, <60 s)",
         shape_ok && worst < 0.10 && secs < 60.0,
         "worst slope rel err " + std::to_string(worst * 100) + "%, " + std::to_string(secs) +
             " s");
}

// 3. Simulator and predictor agree to 1e-9 relative on 50 random workloads.
void criterion_oracle_equivalence() {
  ClusterProfile cluster;
  cluster.noise_sigma = 0.0;
  const PhaseModelSet gt = ground_truth_models(cluster.ground_truth);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    WorkloadSpec w;
    w.name = "rand";
    w.input_mb = 256.0 + 64.0 * static_cast<double>(rng::key(9000, i, 1) % 200);
    w.map_selectivity = 0.05 + 0.95 * rng::uniform(rng::key(9000, i, 2));
    w.reduce_selectivity = 0.05 + 1.1 * rng::uniform(rng::key(9000, i, 3));
    w.reducer_count = (i % 7 == 0) ? 0 : 1 + static_cast<int>(rng::key(9000, i, 4) % 16);
    w.map_ms_per_record = 2e-5 * rng::uniform(rng::key(9000, i, 5));
    w.reduce_ms_per_key = 5e-3 * rng::uniform(rng::key(9000, i, 6));
    w.keys_per_mb = 2000.0;
    const double sim = simulate_job(cluster, w, 7).total_ms;
    const double pred = predict_job(gt, w, cluster, CustomTimes::from_workload_rates()).total_ms;
    worst = std::max(worst, rel(pred, sim));
  }
  report("oracle equivalence over 50 workloads (1e-9 relative)", worst < 1e-9,
         "worst rel err " + std::to_string(worst));
}

// 4. Closed loop: fitted models vs noisy simulator over the 14-entry suite.
void criterion_closed_loop() {
  ClusterProfile cluster;
  const SampleSet samples = run_profile(cluster, build_grid(SweepConfig{}, 42));
  const PhaseModelSet models = fit_phase_models(samples);
  std::vector<std::int64_t> seeds;
  for (int i = 0; i < 5; ++i) {
    seeds.push_back(static_cast<std::int64_t>(rng::key(42, static_cast<std::uint64_t>(i))));
  }
  const SuiteReport rep = run_suite(models, cluster, default_suite(), seeds);
  report("closed loop on the 14-workload suite (mean |Err%| <= 10, max <= 18)",
         rep.mean_abs_error_pct <= 10.0 && rep.max_abs_error_pct <= 18.0,
         "mean " + std::to_string(rep.mean_abs_error_pct) + "%, max " +
             std::to_string(rep.max_abs_error_pct) + "%");
}

// 5. Wave arithmetic: the 100/20 example plus the ceiling identities.
void criterion_wave_arithmetic() {
  bool ok = wave_count(100, 20) == 5;
  for (int i = 0; i < 10000 && ok; ++i) {
    const long tasks = 1 + static_cast<long>(rng::key(77, i, 0) % 100000);
    const int containers = 1 + static_cast<int>(rng::key(77, i, 1) % 500);
    const long w = wave_count(tasks, containers);
    ok = w * containers >= tasks && (w - 1) * containers < tasks && w <= tasks;
  }
  report("wave arithmetic (100/20 -> 5; 1e4 ceiling identities)", ok);
}

// 6. The shipped fixture log parses to the reference job's features.
void criterion_fixture_features() {
  const fs::path log = fs::path(MRPERF_DATA_DIR) / "reference_job.log";
  bool ok = false;
  std::string detail;
  try {
    const JobTrace t = parse_log(LogDocument::from_text(slurp(log)));
    double input = 0.0, output = 0.0;
    for (const TaskTrace& task : t.tasks) {
      if (task.kind == TaskKind::Map) {
        input += task.input_mb;
        output += task.output_mb;
      }
    }
    const double m_sel_pct = output / input * 100.0;
    ok = input == 19584.0 && t.map_task_count() == 153 && t.reduce_task_count() == 11 &&
         m_sel_pct == 100.0 && t.container_count == 8;
    detail = "D=" + std::to_string(input) + " M_t=" + std::to_string(t.map_task_count()) +
             " R_t=" + std::to_string(t.reduce_task_count()) +
             " M_sel=" + std::to_string(m_sel_pct) + "% N_c=" + std::to_string(t.container_count);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  report("fixture log features (D=19584, M_t=153, R_t=11, M_sel=100%, N_c=8)", ok, detail);
}

// 7. Regression correctness: residual orthogonality, t-CDF table, fold
// partition invariants.
void criterion_regression_correctness() {
  bool ok = true;
  std::string detail;

  const int n = 150;
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = rng::uniform(rng::key(800, i, 0)) * 100.0;
    x(i, 1) = rng::uniform(rng::key(800, i, 1)) * 10.0;
    y(i) = 3.0 * x(i, 0) - 2.0 * x(i, 1) + 7.0 + rng::standard_normal(rng::key(800, i, 2));
  }
  const LinearFit fit = ols_fit(x, y, {"a", "b"});
  Eigen::MatrixXd design(n, 3);
  design.col(0).setOnes();
  design.rightCols(2) = x;
  Eigen::VectorXd yhat(n);
  for (int i = 0; i < n; ++i) yhat(i) = fit.evaluate({x(i, 0), x(i, 1)});
  const double ortho = (design.transpose() * (y - yhat)).cwiseAbs().maxCoeff() / y.norm();
  if (ortho > 1e-8) {
    ok = false;
    detail += "orthogonality " + std::to_string(ortho) + "; ";
  }

  const double table[][3] = {
      {5, 0, 0.5},   {5, 1, 0.818391266175},   {5, 2, 0.949030260585},   {5, 3, 0.984950376051},
      {30, 0, 0.5},  {30, 1, 0.837345692287},  {30, 2, 0.972687477519},  {30, 3, 0.997305017967},
      {100, 0, 0.5}, {100, 1, 0.840137922108}, {100, 2, 0.975893910634}, {100, 3, 0.998296042328},
  };
  for (const auto& row : table) {
    if (std::fabs(student_t_cdf(row[1], row[0]) - row[2]) > 1e-6) {
      ok = false;
      detail += "t-CDF mismatch at df=" + std::to_string(row[0]) + "; ";
    }
  }

  for (int count : {10, 37, 1000}) {
    const auto folds = cv_folds(count, 10, 42);
    std::set<int> seen;
    std::size_t min_size = folds[0].size(), max_size = folds[0].size();
    for (const auto& fold : folds) {
      min_size = std::min(min_size, fold.size());
      max_size = std::max(max_size, fold.size());
      for (int idx : fold) {
        if (idx < 0 || idx >= count || !seen.insert(idx).second) ok = false;
      }
    }
    if (seen.size() != static_cast<std::size_t>(count) || max_size - min_size > 1) ok = false;
  }
  report("regression correctness (orthogonality, t-CDF, fold partitions)", ok, detail);
}

// 8. Backward elimination removes the noise column and keeps the signal.
void criterion_backward_elimination() {
  const int n = 200;
  const std::uint64_t seed = 11;
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = i + 1.0;
    x(i, 1) = rng::standard_normal(rng::key(seed, i, 1));
    y(i) = 2.0 * x(i, 0) + 1.0 + rng::standard_normal(rng::key(seed, i, 2));
  }
  const LinearFit full = ols_fit(x, y, {"x1", "noise"});
  const LinearFit fit = backward_eliminate(x, y, {"x1", "noise"});
  const bool ok = full.p_values[1] > 0.05 && fit.feature_names.size() == 1 &&
                  fit.feature_names[0] == "x1" && fit.p_values[0] <= 0.05;
  report("backward elimination (noise column dropped, signal kept at p <= 0.05)", ok,
         "full-fit p(noise) = " + std::to_string(full.p_values[1]));
}

// 9. Sort-profile totals over D = 500..5000 are linear (R^2 >= 0.98).
void criterion_linearity() {
  ClusterProfile cluster;
  const PhaseModelSet gt = ground_truth_models(cluster.ground_truth);
  std::vector<double> d, sim, pred;
  for (double input = 500; input <= 5000; input += 500) {
    WorkloadSpec w;
    w.name = "sort";
    w.input_mb = input;
    w.map_selectivity = 1.0;
    w.reduce_selectivity = 1.0;
    w.reducer_count = 8;
    w.map_ms_per_record = 1e-5;
    w.reduce_ms_per_key = 1e-3;
    w.keys_per_mb = 2000.0;
    d.push_back(input);
    double acc = 0.0;
    for (std::int64_t seed = 1; seed <= 3; ++seed) acc += simulate_job(cluster, w, seed).total_ms;
    sim.push_back(acc / 3.0);
    pred.push_back(predict_job(gt, w, cluster, CustomTimes::from_workload_rates()).total_ms);
  }
  const auto r2 = [&](const std::vector<double>& values) {
    const int count = static_cast<int>(values.size());
    Eigen::MatrixXd xm(count, 1);
    Eigen::VectorXd ym(count);
    for (int i = 0; i < count; ++i) {
      xm(i, 0) = d[i];
      ym(i) = values[i];
    }
    return ols_fit(xm, ym, {"d"}).r_squared;
  };
  const double r2_sim = r2(sim);
  const double r2_pred = r2(pred);
  report("linearity of sort-profile totals over D=500..5000 (R^2 >= 0.98)",
         r2_sim >= 0.98 && r2_pred >= 0.98,
         "R^2 sim " + std::to_string(r2_sim) + ", predicted " + std::to_string(r2_pred));
}

// 10. CLI determinism: a rerun from the manifest reproduces outputs byte for
// byte.
void criterion_cli_determinism() {
  const fs::path out = fs::temp_directory_path() / "mrperf_acceptance_cli";
  fs::remove_all(out);
  fs::create_directories(out);
  const fs::path sweep = out / "sweep.json";
  {
    std::ofstream s(sweep);
    s << R"({"input_mb_start": 512, "input_mb_end": 1536, "input_mb_step": 512,
             "map_selectivities": [0.3, 1.0], "block_sizes_mb": [64.0, 128.0]})";
  }
  const std::string cli = MRPERF_CLI_PATH;
  const std::string data = MRPERF_DATA_DIR;
  const std::string profile_cmd = cli + " profile --cluster " + data +
                                  "/default_cluster.json --sweep " + sweep.string() +
                                  " --seed 9 --out " + out.string() + " > /dev/null 2>&1";
  bool ok = std::system(profile_cmd.c_str()) == 0;
  std::vector<std::pair<std::string, std::string>> before;
  if (ok) {
    for (const auto& entry : fs::directory_iterator(out)) {
      before.emplace_back(entry.path().filename().string(), slurp(entry.path()));
    }
    const std::string rerun_cmd =
        cli + " rerun " + (out / "manifest.json").string() + " > /dev/null 2>&1";
    ok = std::system(rerun_cmd.c_str()) == 0;
  }
  for (const auto& [name, bytes] : before) {
    if (slurp(out / name) != bytes) ok = false;
  }
  report("CLI determinism (rerun from manifest is byte-identical)", ok && !before.empty());
}

}  // namespace

int main() {
  criterion_recovery_noise_free();
  criterion_recovery_noisy();
  criterion_oracle_equivalence();
  criterion_closed_loop();
  criterion_wave_arithmetic();
  criterion_fixture_features();
  criterion_regression_correctness();
  criterion_backward_elimination();
  criterion_linearity();
  criterion_cli_determinism();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 10 acceptance criteria passed\n");
  return 0;
}
