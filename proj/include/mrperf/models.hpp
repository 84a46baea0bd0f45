#pragma once

#include <map>
#include <string>
#include <vector>

#include "mrperf/profiler.hpp"
#include "mrperf/regress.hpp"
#include "mrperf/types.hpp"

namespace mrperf {

// Design columns derived from a phase's raw counter features:
//   READ: d; COLLECT: m; SPILL: m; MERGE: m*ln(m); SHUFFLE: s, M_t; WRITE: r.
std::vector<std::string> recipe_column_names(Phase phase);
std::vector<double> recipe_apply(Phase phase, const std::vector<double>& raw);

struct PhaseModel {
  Phase phase = Phase::Read;
  LinearFit fit;
  CvReport cv;
};

// Fitted models for the six framework phases. Custom MAP/REDUCE times are
// prediction inputs, not models.
struct PhaseModelSet {
  std::map<Phase, PhaseModel> models;
  std::string units = "MB, ms";

  const PhaseModel& at(Phase p) const;
  void validate() const;  // all six framework phases present
};

// A model set whose coefficients are exactly the given ground-truth values
// (no fit diagnostics). Used to close the simulator/predictor loop.
PhaseModelSet ground_truth_models(const GroundTruthCoefficients& coeffs);

// Per phase: build the design from the recipe, backward-eliminate at alpha,
// then 10-fold cross-validate. Requires >= 30 samples per framework phase.
PhaseModelSet fit_phase_models(const SampleSet& samples, int k = 10, std::int64_t seed = 42,
                               double alpha = 0.05);

}  // namespace mrperf
