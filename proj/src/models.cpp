#include "mrperf/models.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "mrperf/rng.hpp"

namespace mrperf {

std::vector<std::string> recipe_column_names(Phase phase) {
  switch (phase) {
    case Phase::Read: return {"d_mb"};
    case Phase::Collect: return {"m_mb"};
    case Phase::Spill: return {"m_mb"};
    case Phase::Merge: return {"m_ln_m"};
    case Phase::Shuffle: return {"s_mb", "m_t"};
    case Phase::Write: return {"r_mb"};
    default:
      throw InvalidInput(std::string("no model recipe for custom phase ") + phase_name(phase));
  }
}

std::vector<double> recipe_apply(Phase phase, const std::vector<double>& raw) {
  const std::size_t want = phase_feature_names(phase).size();
  if (raw.size() != want) {
    throw InvalidInput(fmt::format("recipe_apply: phase {} expects {} raw features, got {}",
                                   phase_name(phase), want, raw.size()));
  }
  if (phase == Phase::Merge) {
    const double m = raw[0];
    return {m > 0.0 ? std::max(m * std::log(m), 0.0) : 0.0};
  }
  return raw;
}

const PhaseModel& PhaseModelSet::at(Phase p) const {
  const auto it = models.find(p);
  if (it == models.end()) {
    throw InvalidInput(std::string("PhaseModelSet: no model for phase ") + phase_name(p));
  }
  return it->second;
}

void PhaseModelSet::validate() const {
  for (Phase p : kFrameworkPhases) at(p);
}

PhaseModelSet ground_truth_models(const GroundTruthCoefficients& c) {
  c.validate();
  PhaseModelSet set;
  const auto make = [&](Phase p, std::vector<double> coeffs, double intercept) {
    PhaseModel m;
    m.phase = p;
    m.fit.feature_names = recipe_column_names(p);
    m.fit.coefficients = std::move(coeffs);
    m.fit.intercept = intercept;
    m.fit.stderrs.assign(m.fit.coefficients.size(), 0.0);
    m.fit.p_values.assign(m.fit.coefficients.size(), 0.0);
    m.fit.r_squared = 1.0;
    m.fit.adj_r_squared = 1.0;
    set.models[p] = std::move(m);
  };
  make(Phase::Read, {c.read_slope}, c.read_intercept);
  make(Phase::Collect, {c.collect_slope}, c.collect_intercept);
  make(Phase::Spill, {c.spill_slope}, c.spill_intercept);
  make(Phase::Merge, {c.merge_slope}, c.merge_intercept);
  make(Phase::Shuffle, {c.shuffle_slope_data, c.shuffle_slope_mappers}, c.shuffle_intercept);
  make(Phase::Write, {c.write_slope}, c.write_intercept);
  return set;
}

PhaseModelSet fit_phase_models(const SampleSet& samples, int k, std::int64_t seed, double alpha) {
  PhaseModelSet set;
  for (Phase p : kFrameworkPhases) {
    const auto it = samples.by_phase.find(p);
    const std::size_t n = it == samples.by_phase.end() ? 0 : it->second.size();
    if (n < 30) {
      throw InsufficientDataError(fmt::format("fit_phase_models: phase {} has {} samples, need 30",
                                              phase_name(p), n));
    }
    const auto col_names = recipe_column_names(p);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(col_names.size()));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto cols = recipe_apply(p, it->second[i].features);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cols[j];
      }
      y[static_cast<Eigen::Index>(i)] = it->second[i].target_ms;
    }

    PhaseModel model;
    model.phase = p;
    model.fit = backward_eliminate(x, y, col_names, alpha);

    // Cross-validate on the retained columns only.
    std::vector<Eigen::Index> keep;
    for (std::size_t j = 0; j < col_names.size(); ++j) {
      if (std::find(model.fit.feature_names.begin(), model.fit.feature_names.end(),
                    col_names[j]) != model.fit.feature_names.end()) {
        keep.push_back(static_cast<Eigen::Index>(j));
      }
    }
    Eigen::MatrixXd kept(x.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      kept.col(static_cast<Eigen::Index>(j)) = x.col(keep[j]);
    }
    model.cv = kfold_cv(kept, y, model.fit.feature_names, k,
                        static_cast<std::int64_t>(rng::key(
                            static_cast<std::uint64_t>(seed),
                            static_cast<std::uint64_t>(static_cast<int>(p)))));
    set.models[p] = std::move(model);
  }
  return set;
}

}  // namespace mrperf
