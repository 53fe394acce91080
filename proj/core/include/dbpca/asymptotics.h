#pragma once

// Monte Carlo convergence studies for the large-N behaviour of PCA on a
// homogeneous one-factor model: medians over trials against their limits.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dbpca/model.h"

namespace dbpca {

enum class ConvergenceStatistic {
  CosAngleToBeta,    // gamma_{bhat,beta} -> 1 / psi
  EigenvalueRatio,   // lambda_1 / sigma^2 -> xi + delta^2 c1
  BiasRatio,         // gamma_{beta,z} / gamma_{bhat,z} -> psi
  SphereDot,         // |x^T y| for x uniform on the sphere, x^T y -> 0
  AngleImprovement,  // sin^2(beta, bhat(rho*)) / sin^2(beta, bhat)
  EqualWeightRatio,  // equal-weight forecast ratio of the corrected estimator
};

std::string_view to_string(ConvergenceStatistic statistic);
/// Parses the snake_case name; throws std::invalid_argument otherwise.
ConvergenceStatistic parse_statistic(std::string_view name);

/// One-factor homogeneous design: Sigma = sigma^2 beta beta^T + delta^2 I with
/// sigma^2 = N / (T c1) and c1 chosen so that sqrt(1 + delta^2 c1) = psi.
struct ConvergenceConfig {
  Index n_obs = 250;
  double delta2 = 1.0;
  double psi = 1.25;
  double gamma = 0.9;
  double tolerance = 0.03;  // relative deviation of the median from target
  unsigned threads = 1;

  double c1() const { return (psi * psi - 1.0) / delta2; }
};

struct ConvergencePoint {
  Index n;
  double median;
  double lower;    // 5% quantile
  double upper;    // 95% quantile
  double target;
  double relative_deviation;  // |median / target - 1|
  bool pass;
  /// Statistic-specific companion: fraction of trials with
  /// gamma_{bhat,z} < gamma_{beta,z} (bias ratio), sample variance
  /// (equal-weight ratio), fraction within 4 / sqrt(n) (sphere dot).
  double auxiliary;
};

struct ConvergenceReport {
  std::string statistic_name;
  std::vector<ConvergencePoint> points;

  bool all_pass() const;
  /// Deviations from target nonincreasing along the grid, allowing up to
  /// `inversions` increases.
  bool monotone_approach(int inversions = 1) const;
};

/// Median of xi = chi^2_T / T.
double xi_median(Index n_obs);

/// Median-based limit of the statistic at dimension n (n is unused except
/// for SphereDot).
double convergence_target(ConvergenceStatistic statistic, Index n,
                          const ConvergenceConfig& config);

/// Grid must be strictly increasing; trials_per_point >= 10.
ConvergenceReport run_convergence_study(ConvergenceStatistic statistic,
                                        const std::vector<Index>& grid,
                                        int trials_per_point,
                                        const ConvergenceConfig& config,
                                        std::uint64_t seed);

/// One value of the statistic per trial at dimension n (exposed for tests).
std::vector<double> convergence_samples(ConvergenceStatistic statistic, Index n,
                                        int trials,
                                        const ConvergenceConfig& config,
                                        std::uint64_t seed);

}  // namespace dbpca
