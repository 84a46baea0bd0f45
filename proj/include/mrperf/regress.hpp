#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mrperf/types.hpp"

namespace mrperf {

struct SingularDesignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LinearFit {
  std::vector<std::string> feature_names;  // retained design columns
  std::vector<double> coefficients;
  double intercept = 0.0;
  std::vector<double> stderrs;
  std::vector<double> p_values;
  double intercept_stderr = 0.0;
  double intercept_p_value = 1.0;
  milliseconds rmse_ms = 0.0;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  int n_samples = 0;
  std::vector<std::string> dropped_features;  // zero-variance columns, removed pre-fit
  std::vector<std::string> removal_order;     // backward-elimination removals, in order

  // Linear evaluation on a row given in this fit's retained column order.
  double evaluate(const std::vector<double>& row) const;
};

struct CvReport {
  int k = 10;
  std::vector<double> fold_rmses;
  double mean_rmse = 0.0;
  std::vector<std::pair<double, double>> predictions;  // (actual, predicted)
  std::int64_t seed = 0;
};

// Two-sided CDF of Student's t distribution with df degrees of freedom,
// computed through the regularized incomplete beta function.
double student_t_cdf(double t, double df);
double regularized_incomplete_beta(double a, double b, double x);

// Ordinary least squares with an intercept. Standard errors come from the
// unbiased residual variance and the inverse normal-equations matrix;
// p-values from the two-sided t distribution with n-p-1 degrees of freedom.
// Requires n > p+1 and a full-column-rank design.
LinearFit ols_fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                  const std::vector<std::string>& feature_names);

// Iteratively drops the feature with the largest p-value above alpha and
// refits, ending with all p-values <= alpha or an intercept-only model.
// Ties are broken by declared feature order (lowest index removed).
LinearFit backward_eliminate(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                             const std::vector<std::string>& feature_names, double alpha = 0.05);

// Seeded shuffle of [0, n) into k folds: pairwise disjoint, union covers all
// indices, sizes differ by at most one. Deterministic per seed.
std::vector<std::vector<int>> cv_folds(int n, int k, std::int64_t seed);

// Fit on k-1 folds, score RMSE on the held-out fold, over the cv_folds
// partition. Deterministic per seed.
CvReport kfold_cv(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                  const std::vector<std::string>& feature_names, int k, std::int64_t seed);

}  // namespace mrperf
