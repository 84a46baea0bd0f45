#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>
#include <map>

#include "mrperf/benchsuite.hpp"
#include "mrperf/simcluster.hpp"

using namespace mrperf;

TEST_CASE("default suite shape: 14 entries, at least three per pattern") {
  const auto suite = default_suite();
  CHECK(suite.size() == 14);
  std::map<DesignPattern, int> per_pattern;
  for (const auto& e : suite) {
    per_pattern[e.pattern] += 1;
    CHECK_NOTHROW(e.workload.validate());
  }
  for (DesignPattern p : {DesignPattern::Summarisation, DesignPattern::Filtering,
                          DesignPattern::DataOrganisation, DesignPattern::Join}) {
    CHECK(per_pattern[p] >= 3);
  }
}

TEST_CASE("catalogue anchor entries") {
  const auto suite = default_suite();
  const auto find = [&](const std::string& name) -> const SuiteEntry& {
    for (const auto& e : suite) {
      if (e.workload.name == name) return e;
    }
    FAIL("missing suite entry: ", name);
    return suite.front();
  };

  const SuiteEntry& sort = find("Total Order Sorting");
  CHECK(sort.workload.input_mb == doctest::Approx(2662.0));
  CHECK(sort.workload.map_selectivity == doctest::Approx(1.0));
  CHECK(sort.workload.reduce_selectivity == doctest::Approx(1.0));

  const SuiteEntry& rsj = find("RSJ Inner");
  CHECK(rsj.workload.input_mb == doctest::Approx(19149.0));
  // Combined join input stays within 5% of the reference job's 19584 MB.
  CHECK(std::fabs(rsj.workload.input_mb - 19584.0) / 19584.0 < 0.05);
  CHECK(rsj.pattern == DesignPattern::Join);
}

TEST_CASE("noise-free suite run with ground-truth models has zero error") {
  ClusterProfile c;
  c.noise_sigma = 0.0;
  const SuiteReport rep =
      run_suite(ground_truth_models(c.ground_truth), c, default_suite(), {1});
  REQUIRE(rep.rows.size() == 14);
  for (const SuiteRow& r : rep.rows) CHECK(std::fabs(r.error_pct) < 1e-9);
  CHECK(rep.mean_abs_error_pct < 1e-9);
  CHECK(rep.max_abs_error_pct < 1e-9);
}

TEST_CASE("report column order is Algorithm, Predicted, Actual, Error%") {
  ClusterProfile c;
  c.noise_sigma = 0.0;
  const SuiteReport rep =
      run_suite(ground_truth_models(c.ground_truth), c, default_suite(), {1});
  CHECK(rep.to_csv().rfind("Algorithm,Predicted,Actual,Error%\n", 0) == 0);
  const std::string md = rep.to_markdown();
  CHECK(md.find("| Algorithm | Predicted (sec) | Actual (sec) | Error% |") != std::string::npos);
  const std::string bd = rep.breakdown_csv();
  CHECK(bd.rfind("algorithm,phase,per_task_ms,waves,contribution_ms\n", 0) == 0);
  // 8 pipeline phases per entry.
  CHECK(std::count(bd.begin(), bd.end(), '\n') == 1 + 14 * 8);
}

TEST_CASE("identical seeds give identical report bytes") {
  ClusterProfile c;
  const PhaseModelSet gt = ground_truth_models(c.ground_truth);
  const SuiteReport a = run_suite(gt, c, default_suite(), {3, 4, 5});
  const SuiteReport b = run_suite(gt, c, default_suite(), {3, 4, 5});
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_markdown() == b.to_markdown());
  CHECK(a.breakdown_csv() == b.breakdown_csv());
}

TEST_CASE("seconds are rounded milliseconds") {
  ClusterProfile c;
  c.noise_sigma = 0.0;
  const SuiteReport rep =
      run_suite(ground_truth_models(c.ground_truth), c, default_suite(), {1});
  for (const SuiteRow& r : rep.rows) {
    CHECK(r.predicted_sec == std::lround(r.predicted_ms / 1000.0));
    CHECK(r.actual_sec == std::lround(r.actual_ms / 1000.0));
  }
}

TEST_CASE("summarisation workloads at equal input size cluster tightly") {
  ClusterProfile c;
  std::vector<double> totals;
  for (const SuiteEntry& e : default_suite()) {
    if (e.pattern == DesignPattern::Summarisation && e.workload.input_mb == 16384.0) {
      totals.push_back(simulate_job(c, e.workload, 11).total_ms);
    }
  }
  REQUIRE(totals.size() >= 3);
  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(totals.size());
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean);
  var /= static_cast<double>(totals.size());
  CHECK(std::sqrt(var) / mean <= 0.25);  // coefficient of variation
}

TEST_CASE("run_suite requires at least one seed") {
  ClusterProfile c;
  CHECK_THROWS_AS(run_suite(ground_truth_models(c.ground_truth), c, default_suite(), {}),
                  InvalidInput);
}
