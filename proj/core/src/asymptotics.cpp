#include "dbpca/asymptotics.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dbpca/correction.h"
#include "dbpca/metrics.h"
#include "dbpca/portfolio.h"
#include "dbpca/simgen.h"
#include "dbpca/spectral.h"
#include "dbpca/stats.h"
#include "parallel.h"

namespace dbpca {

namespace {

struct Named {
  ConvergenceStatistic statistic;
  std::string_view name;
};

constexpr Named kNames[] = {
    {ConvergenceStatistic::CosAngleToBeta, "cos_angle_to_beta"},
    {ConvergenceStatistic::EigenvalueRatio, "eigenvalue_ratio"},
    {ConvergenceStatistic::BiasRatio, "bias_ratio"},
    {ConvergenceStatistic::SphereDot, "sphere_dot"},
    {ConvergenceStatistic::AngleImprovement, "angle_improvement"},
    {ConvergenceStatistic::EqualWeightRatio, "equal_weight_ratio"},
};

double psi_at_median(const ConvergenceConfig& config) {
  return std::sqrt(1.0 + config.delta2 * config.c1() / xi_median(config.n_obs));
}

void validate(const ConvergenceConfig& config) {
  if (config.n_obs < 2) throw std::invalid_argument("n_obs must be >= 2");
  if (!(config.delta2 > 0.0)) throw std::invalid_argument("delta2 must be > 0");
  if (!(config.psi > 1.0)) throw std::invalid_argument("psi must be > 1");
  if (!(config.gamma >= 0.0 && config.gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  if (!(config.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be > 0");
  }
}

struct OneFactorDraw {
  FactorModelSpec model;
  ReturnsPanel panel;
};

OneFactorDraw draw_one_factor(Index n, const ConvergenceConfig& config,
                              Rng& rng) {
  const double sigma2 = static_cast<double>(n) /
                        (static_cast<double>(config.n_obs) * config.c1());
  Matrix exposures = build_market_beta(n, config.gamma, rng);
  FactorModelSpec model(std::move(exposures), Vector::Constant(1, sigma2),
                        Vector::Constant(n, config.delta2));
  ReturnsPanel panel = simulate_returns(model, config.n_obs, rng);
  return {std::move(model), std::move(panel)};
}

double sphere_dot_sample(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  double sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double x = normal(rng);
    sum += x;
    sq += x * x;
  }
  // y = z, so x^T y = sum(x) / (sqrt(n) ||x||).
  return std::abs(sum) / std::sqrt(static_cast<double>(n) * sq);
}

double trial_statistic(ConvergenceStatistic statistic, Index n,
                       const ConvergenceConfig& config, Rng& rng) {
  if (statistic == ConvergenceStatistic::SphereDot) {
    return sphere_dot_sample(n, rng);
  }
  const OneFactorDraw draw = draw_one_factor(n, config, rng);
  const Vector beta = draw.model.market_exposures();
  const double sigma2 = draw.model.factor_variances()(0);
  const ReferenceVector z(n);
  const SampleCovariance cov(draw.panel);
  const SpectralResult spectral = leading_eigenpair(cov);
  const Vector& bhat = spectral.leading_eigenvector;

  switch (statistic) {
    case ConvergenceStatistic::CosAngleToBeta:
      return concentration(bhat, beta);
    case ConvergenceStatistic::EigenvalueRatio:
      return spectral.leading_eigenvalue / sigma2;
    case ConvergenceStatistic::BiasRatio:
      return concentration(beta, z) / concentration(bhat, z);
    case ConvergenceStatistic::AngleImprovement: {
      const Vector shrunk = geodesic_shrink(bhat, z, oracle_rho(beta, bhat, z));
      const double before = concentration(beta, bhat);
      const double after = concentration(beta, shrunk);
      return (1.0 - after * after) / (1.0 - before * before);
    }
    case ConvergenceStatistic::EqualWeightRatio: {
      const CorrectedEstimate est =
          corrected_estimator(cov, spectral, mode::DataDriven{});
      return forecast_ratio(equal_weight(n), assemble_covariance(est.model),
                            assemble_covariance(draw.model));
    }
    case ConvergenceStatistic::SphereDot:
      break;
  }
  throw std::logic_error("trial_statistic: unhandled statistic");
}

}  // namespace

std::string_view to_string(ConvergenceStatistic statistic) {
  for (const auto& entry : kNames) {
    if (entry.statistic == statistic) return entry.name;
  }
  return "unknown";
}

ConvergenceStatistic parse_statistic(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.statistic;
  }
  throw std::invalid_argument("unknown convergence statistic: " +
                              std::string(name));
}

bool ConvergenceReport::all_pass() const {
  for (const auto& p : points) {
    if (!p.pass) return false;
  }
  return !points.empty();
}

bool ConvergenceReport::monotone_approach(int inversions) const {
  int seen = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].relative_deviation > points[i - 1].relative_deviation) ++seen;
  }
  return seen <= inversions;
}

double xi_median(Index n_obs) {
  return chi_squared_median(static_cast<double>(n_obs)) /
         static_cast<double>(n_obs);
}

double convergence_target(ConvergenceStatistic statistic, Index n,
                          const ConvergenceConfig& config) {
  validate(config);
  const double psi = psi_at_median(config);
  const double g2 = config.gamma * config.gamma;
  switch (statistic) {
    case ConvergenceStatistic::CosAngleToBeta:
      return 1.0 / psi;
    case ConvergenceStatistic::EigenvalueRatio:
      return xi_median(config.n_obs) + config.delta2 * config.c1();
    case ConvergenceStatistic::BiasRatio:
      return psi;
    case ConvergenceStatistic::SphereDot:
      return sphere_coordinate_abs_median(n);
    case ConvergenceStatistic::AngleImprovement:
      return (1.0 - g2) / (1.0 - g2 / (psi * psi));
    case ConvergenceStatistic::EqualWeightRatio:
      return xi_median(config.n_obs);
  }
  throw std::logic_error("convergence_target: unhandled statistic");
}

std::vector<double> convergence_samples(ConvergenceStatistic statistic, Index n,
                                        int trials,
                                        const ConvergenceConfig& config,
                                        std::uint64_t seed) {
  validate(config);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  const std::uint64_t key =
      (static_cast<std::uint64_t>(statistic) << 48) ^ static_cast<std::uint64_t>(n);
  std::vector<double> out(static_cast<std::size_t>(trials));
  detail::parallel_for(out.size(), config.threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, key, t));
    out[t] = trial_statistic(statistic, n, config, rng);
  });
  return out;
}

ConvergenceReport run_convergence_study(ConvergenceStatistic statistic,
                                        const std::vector<Index>& grid,
                                        int trials_per_point,
                                        const ConvergenceConfig& config,
                                        std::uint64_t seed) {
  validate(config);
  if (trials_per_point < 10) {
    throw std::invalid_argument("trials_per_point must be >= 10");
  }
  if (grid.empty()) throw std::invalid_argument("grid must be non-empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("grid must be strictly increasing");
    }
  }

  ConvergenceReport report;
  report.statistic_name = std::string(to_string(statistic));
  for (Index n : grid) {
    const std::vector<double> samples =
        convergence_samples(statistic, n, trials_per_point, config, seed);
    ConvergencePoint p{};
    p.n = n;
    p.median = median(samples);
    p.lower = quantile(samples, 0.05);
    p.upper = quantile(samples, 0.95);
    p.target = convergence_target(statistic, n, config);
    p.relative_deviation = std::abs(p.median / p.target - 1.0);
    p.pass = p.relative_deviation <= config.tolerance;
    switch (statistic) {
      case ConvergenceStatistic::BiasRatio: {
        double below = 0.0;
        for (double v : samples) below += v > 1.0 ? 1.0 : 0.0;
        p.auxiliary = below / static_cast<double>(samples.size());
        break;
      }
      case ConvergenceStatistic::EqualWeightRatio:
        p.auxiliary = sample_variance(samples);
        break;
      case ConvergenceStatistic::SphereDot: {
        const double bound = 4.0 / std::sqrt(static_cast<double>(n));
        double inside = 0.0;
        for (double v : samples) inside += v <= bound ? 1.0 : 0.0;
        p.auxiliary = inside / static_cast<double>(samples.size());
        break;
      }
      default:
        p.auxiliary = std::nan("");
    }
    report.points.push_back(p);
  }
  return report;
}

}  // namespace dbpca
