#include <doctest.h>

#include "mrperf/domain.hpp"
#include "mrperf/rng.hpp"

using namespace mrperf;

TEST_CASE("wave_count ceiling arithmetic") {
  CHECK(wave_count(100, 20) == 5);
  CHECK(wave_count(0, 8) == 0);
  CHECK(wave_count(101, 20) == 6);
  CHECK(wave_count(1, 8) == 1);
  CHECK(wave_count(8, 8) == 1);
  CHECK(wave_count(9, 8) == 2);
  CHECK_THROWS_AS(wave_count(5, 0), InvalidInput);
  CHECK_THROWS_AS(wave_count(-1, 4), InvalidInput);
}

TEST_CASE("wave_count ceiling identities over random pairs") {
  for (int i = 0; i < 10000; ++i) {
    const long tasks = 1 + static_cast<long>(rng::key(77, i, 0) % 100000);
    const int containers = 1 + static_cast<int>(rng::key(77, i, 1) % 500);
    const long w = wave_count(tasks, containers);
    CHECK(w * containers >= tasks);
    CHECK((w - 1) * containers < tasks);
    CHECK(w <= tasks);
  }
}

TEST_CASE("derive_features on the 153-mapper reference job") {
  WorkloadSpec w;
  w.name = "ref";
  w.input_mb = 19584;
  w.map_selectivity = 1.0;
  w.reduce_selectivity = 1.0;
  w.reducer_count = 11;
  ClusterProfile c;  // 8 containers, 128 MB blocks

  const DerivedFeatures f = derive_features(w, c);
  CHECK(f.total_mappers == 153);
  CHECK(f.map_output_mb == doctest::Approx(19584.0));
  CHECK(f.shuffle_per_reducer_mb == doctest::Approx(1780.36).epsilon(1e-4));
  CHECK(f.map_waves == 20);
  CHECK(f.reduce_waves == 2);
  CHECK_FALSE(f.map_only);
}

TEST_CASE("derive_features with zero map selectivity emits nothing") {
  WorkloadSpec w;
  w.name = "empty";
  w.input_mb = 128;
  w.map_selectivity = 0.0;
  w.reduce_selectivity = 1.0;
  w.reducer_count = 1;
  ClusterProfile c;

  const DerivedFeatures f = derive_features(w, c);
  CHECK(f.total_mappers == 1);
  CHECK(f.map_output_mb == 0.0);
  CHECK(f.shuffle_per_reducer_mb == 0.0);
  CHECK(f.reduce_output_mb == 0.0);
}

TEST_CASE("derive_features hand arithmetic") {
  WorkloadSpec w;
  w.name = "hand";
  w.input_mb = 2560;
  w.map_selectivity = 0.5;
  w.reduce_selectivity = 0.5;
  w.reducer_count = 4;
  ClusterProfile c;

  const DerivedFeatures f = derive_features(w, c);
  CHECK(f.total_mappers == 20);
  CHECK(f.map_output_mb == doctest::Approx(1280.0));
  CHECK(f.shuffle_per_reducer_mb == doctest::Approx(320.0));
  CHECK(f.reduce_output_mb == doctest::Approx(640.0));
  CHECK(f.map_waves == 3);
}

TEST_CASE("derive_features map-only diagnostic") {
  WorkloadSpec w;
  w.name = "maponly";
  w.input_mb = 512;
  w.map_selectivity = 0.5;
  w.reduce_selectivity = 0.5;  // nonzero with no reducers
  w.reducer_count = 0;
  ClusterProfile c;

  const DerivedFeatures f = derive_features(w, c);
  CHECK(f.map_only);
  CHECK(f.shuffle_per_reducer_mb == 0.0);
  CHECK(f.reduce_output_mb == 0.0);
  CHECK(f.reduce_waves == 0);
}

TEST_CASE("derive_features is monotone in input_mb") {
  ClusterProfile c;
  DerivedFeatures prev{};
  for (double d = 128; d <= 4096; d += 128) {
    WorkloadSpec w;
    w.name = "mono";
    w.input_mb = d;
    w.map_selectivity = 0.7;
    w.reduce_selectivity = 0.4;
    w.reducer_count = 6;
    const DerivedFeatures f = derive_features(w, c);
    CHECK(f.total_mappers >= prev.total_mappers);
    CHECK(f.map_output_mb >= prev.map_output_mb);
    CHECK(f.shuffle_per_reducer_mb >= prev.shuffle_per_reducer_mb);
    CHECK(f.reduce_output_mb >= prev.reduce_output_mb);
    CHECK(f.map_waves >= prev.map_waves);
    prev = f;
  }
}
