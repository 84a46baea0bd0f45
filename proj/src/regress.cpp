#include "mrperf/regress.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "mrperf/rng.hpp"

namespace mrperf {

double LinearFit::evaluate(const std::vector<double>& row) const {
  if (row.size() != coefficients.size()) {
    throw InvalidInput("LinearFit::evaluate: row width does not match retained features");
  }
  double y = intercept;
  for (std::size_t i = 0; i < row.size(); ++i) y += coefficients[i] * row[i];
  return y;
}

namespace {

// Continued-fraction evaluation of the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int max_iter = 300;
  constexpr double eps = 3e-16;
  constexpr double fpmin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0) throw InvalidInput("student_t_cdf: df must be > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

LinearFit ols_fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                  const std::vector<std::string>& feature_names) {
  const auto n = features.rows();
  const auto p = features.cols();
  if (static_cast<std::size_t>(p) != feature_names.size()) {
    throw InvalidInput("ols_fit: feature_names size does not match feature columns");
  }
  if (targets.size() != n) throw InvalidInput("ols_fit: targets size does not match rows");
  if (n <= p + 1) {
    throw InsufficientDataError(
        fmt::format("ols_fit: need n > p+1 samples, got n={} for p={}", n, p));
  }

  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  if (p > 0) design.rightCols(p) = features;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p + 1) {
    // Name the columns the pivoting pushed past the numerical rank.
    const auto perm = qr.colsPermutation().indices();
    std::string cols;
    for (Eigen::Index i = qr.rank(); i < p + 1; ++i) {
      const int col = perm[i];
      if (!cols.empty()) cols += ", ";
      cols += col == 0 ? "(intercept)" : feature_names[static_cast<std::size_t>(col - 1)];
    }
    throw SingularDesignError("ols_fit: singular design, collinear columns: " + cols);
  }

  const Eigen::VectorXd beta = qr.solve(targets);
  const Eigen::VectorXd residuals = targets - design * beta;
  const double sse = residuals.squaredNorm();
  const double df = static_cast<double>(n - p - 1);
  const double sigma2 = sse / df;
  const Eigen::MatrixXd cov = sigma2 * (design.transpose() * design).inverse();

  LinearFit fit;
  fit.feature_names = feature_names;
  fit.n_samples = static_cast<int>(n);
  fit.intercept = beta[0];
  fit.coefficients.assign(beta.data() + 1, beta.data() + 1 + p);
  fit.rmse_ms = std::sqrt(sse / static_cast<double>(n));

  const double mean = targets.mean();
  const double sst = (targets.array() - mean).matrix().squaredNorm();
  if (sst > 0.0) {
    fit.r_squared = 1.0 - sse / sst;
  } else {
    fit.r_squared = sse <= 1e-24 ? 1.0 : 0.0;
  }
  fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) / df;

  const auto pvalue = [&](double coef, double se) {
    if (se <= 0.0) return coef == 0.0 ? 1.0 : 0.0;
    const double t = coef / se;
    return 2.0 * (1.0 - student_t_cdf(std::fabs(t), df));
  };
  fit.intercept_stderr = std::sqrt(std::max(cov(0, 0), 0.0));
  fit.intercept_p_value = pvalue(fit.intercept, fit.intercept_stderr);
  fit.stderrs.resize(static_cast<std::size_t>(p));
  fit.p_values.resize(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    const double se = std::sqrt(std::max(cov(j + 1, j + 1), 0.0));
    fit.stderrs[static_cast<std::size_t>(j)] = se;
    fit.p_values[static_cast<std::size_t>(j)] = pvalue(beta[j + 1], se);
  }
  return fit;
}

LinearFit backward_eliminate(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                             const std::vector<std::string>& feature_names, double alpha) {
  std::vector<int> active;
  LinearFit result;

  // Zero-variance columns carry no signal and would make the design singular;
  // drop them up front and report them.
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const double first = features(0, j);
    const bool constant = (features.col(j).array() == first).all();
    if (constant) {
      result.dropped_features.push_back(feature_names[static_cast<std::size_t>(j)]);
    } else {
      active.push_back(static_cast<int>(j));
    }
  }

  for (;;) {
    Eigen::MatrixXd sub(features.rows(), static_cast<Eigen::Index>(active.size()));
    std::vector<std::string> sub_names;
    sub_names.reserve(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      sub.col(static_cast<Eigen::Index>(i)) = features.col(active[i]);
      sub_names.push_back(feature_names[static_cast<std::size_t>(active[i])]);
    }
    LinearFit fit = ols_fit(sub, targets, sub_names);
    fit.dropped_features = result.dropped_features;
    fit.removal_order = result.removal_order;

    if (active.empty()) return fit;

    // Largest p-value above alpha goes; ties break on declared feature order.
    std::size_t worst = active.size();
    double worst_p = alpha;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (fit.p_values[i] > worst_p) {
        worst_p = fit.p_values[i];
        worst = i;
      }
    }
    if (worst == active.size()) return fit;
    result.removal_order.push_back(sub_names[worst]);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
  }
}

std::vector<std::vector<int>> cv_folds(int n, int k, std::int64_t seed) {
  if (k < 2) throw InvalidInput("cv_folds: k must be >= 2");
  if (n < k) {
    throw InsufficientDataError(fmt::format("cv_folds: need n >= k, got n={} k={}", n, k));
  }

  // Deterministic Fisher-Yates keyed on the seed.
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = idx.size() - 1; i > 0; --i) {
    const double u = rng::uniform(rng::key(static_cast<std::uint64_t>(seed), i, 0x6b6f6c64ULL));
    const auto j = static_cast<std::size_t>(u * static_cast<double>(i + 1));
    std::swap(idx[i], idx[std::min(j, i)]);
  }

  std::vector<std::vector<int>> folds;
  const int base = n / k;
  const int extra = n % k;
  std::size_t offset = 0;
  for (int f = 0; f < k; ++f) {
    const auto fold_size = static_cast<std::size_t>(base + (f < extra ? 1 : 0));
    folds.emplace_back(idx.begin() + offset, idx.begin() + offset + fold_size);
    offset += fold_size;
  }
  return folds;
}

CvReport kfold_cv(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                  const std::vector<std::string>& feature_names, int k, std::int64_t seed) {
  const auto n = features.rows();
  const auto folds = cv_folds(static_cast<int>(n), k, seed);

  CvReport report;
  report.k = k;
  report.seed = seed;

  for (const auto& test : folds) {
    const auto fold_size = static_cast<Eigen::Index>(test.size());

    Eigen::MatrixXd train_x(n - fold_size, features.cols());
    Eigen::VectorXd train_y(n - fold_size);
    Eigen::Index r = 0;
    std::vector<bool> in_test(static_cast<std::size_t>(n), false);
    for (auto t : test) in_test[static_cast<std::size_t>(t)] = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (in_test[static_cast<std::size_t>(i)]) continue;
      train_x.row(r) = features.row(i);
      train_y[r] = targets[i];
      ++r;
    }

    const LinearFit fit = ols_fit(train_x, train_y, feature_names);
    double sse = 0.0;
    for (auto t : test) {
      double pred = fit.intercept;
      for (Eigen::Index j = 0; j < features.cols(); ++j) {
        pred += fit.coefficients[static_cast<std::size_t>(j)] * features(t, j);
      }
      report.predictions.emplace_back(targets[t], pred);
      sse += (targets[t] - pred) * (targets[t] - pred);
    }
    report.fold_rmses.push_back(std::sqrt(sse / static_cast<double>(fold_size)));
  }
  report.mean_rmse =
      std::accumulate(report.fold_rmses.begin(), report.fold_rmses.end(), 0.0) / k;
  return report;
}

}  // namespace mrperf
