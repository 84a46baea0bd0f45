#include <doctest.h>

#include "mrperf/json_io.hpp"

using namespace mrperf;

TEST_CASE("cluster JSON round-trips and rejects unknown fields") {
  ClusterProfile c;
  c.container_count = 12;
  c.noise_sigma = 0.02;
  const ClusterProfile back = cluster_from_json(cluster_to_json(c));
  CHECK(back.container_count == 12);
  CHECK(back.noise_sigma == 0.02);
  CHECK(back.block_size_mb == c.block_size_mb);
  CHECK(back.ground_truth.shuffle_slope_data == c.ground_truth.shuffle_slope_data);

  CHECK_THROWS_AS(cluster_from_json(R"({"container_count": 8, "surprise": 1})"), JsonError);
  CHECK_THROWS_AS(cluster_from_json("not json"), JsonError);
}

TEST_CASE("missing cluster fields take defaults") {
  const ClusterProfile c = cluster_from_json(R"({"container_count": 4})");
  CHECK(c.container_count == 4);
  CHECK(c.block_size_mb == 128.0);
  CHECK(c.noise_sigma == 0.05);
}

TEST_CASE("workload JSON round-trips") {
  WorkloadSpec w;
  w.name = "roundtrip";
  w.input_mb = 4096;
  w.map_selectivity = 0.4;
  w.reduce_selectivity = 0.9;
  w.reducer_count = 6;
  w.map_ms_per_record = 1e-5;
  w.reduce_ms_per_key = 2e-3;
  w.keys_per_mb = 1500.0;
  w.design_pattern = DesignPattern::Filtering;
  const WorkloadSpec back = workload_from_json(workload_to_json(w));
  CHECK(back.name == w.name);
  CHECK(back.input_mb == w.input_mb);
  CHECK(back.map_selectivity == w.map_selectivity);
  CHECK(back.reducer_count == w.reducer_count);
  CHECK(back.design_pattern == w.design_pattern);
  CHECK_THROWS_AS(workload_from_json(R"({"name": "x", "bogus_field": 1})"), JsonError);
}

TEST_CASE("sweep JSON round-trips") {
  SweepConfig s;
  s.input_mb_end = 2048;
  s.map_selectivities = {0.5, 1.0};
  const SweepConfig back = sweep_from_json(sweep_to_json(s));
  CHECK(back.input_mb_end == 2048);
  CHECK(back.map_selectivities == s.map_selectivities);
  CHECK(back.block_sizes_mb == s.block_sizes_mb);
}

TEST_CASE("model-set JSON round-trips with fit diagnostics") {
  const PhaseModelSet models = ground_truth_models(GroundTruthCoefficients{});
  const PhaseModelSet back = models_from_json(models_to_json(models));
  back.validate();
  for (Phase p : kFrameworkPhases) {
    CHECK(back.at(p).fit.coefficients == models.at(p).fit.coefficients);
    CHECK(back.at(p).fit.intercept == models.at(p).fit.intercept);
    CHECK(back.at(p).fit.feature_names == models.at(p).fit.feature_names);
  }
  CHECK(back.units == "MB, ms");
}

TEST_CASE("suite JSON round-trips the default catalogue") {
  const auto suite = default_suite();
  const auto back = suite_from_json(suite_to_json(suite));
  REQUIRE(back.size() == suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CHECK(back[i].workload.name == suite[i].workload.name);
    CHECK(back[i].workload.input_mb == suite[i].workload.input_mb);
    CHECK(back[i].pattern == suite[i].pattern);
  }
}

TEST_CASE("manifest JSON round-trips") {
  RunManifest m;
  m.command = "profile";
  m.inputs = {"a.json", "b.json"};
  m.seed = 99;
  m.output_dir = "/tmp/x";
  m.tool_version = "test 1.0";
  m.argv = {"profile", "--seed", "99"};
  const RunManifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back.command == m.command);
  CHECK(back.inputs == m.inputs);
  CHECK(back.seed == m.seed);
  CHECK(back.argv == m.argv);
}
