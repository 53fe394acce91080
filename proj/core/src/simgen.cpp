#include "dbpca/simgen.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbpca {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector standard_normal(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector out(n);
  for (Index i = 0; i < n; ++i) out(i) = normal(rng);
  return out;
}

}  // namespace

void CalibrationConfig::validate() const {
  if (n_assets < 2) throw std::invalid_argument("n_assets must be >= 2");
  if (n_obs < 2) throw std::invalid_argument("n_obs must be >= 2");
  if (n_factors < 1) throw std::invalid_argument("n_factors must be >= 1");
  if (static_cast<Index>(style_annual_vols.size()) != n_factors - 1) {
    throw std::invalid_argument(
        "style_annual_vols must have n_factors - 1 entries, got " +
        std::to_string(style_annual_vols.size()));
  }
  if (!(market_annual_vol > 0.0)) {
    throw std::invalid_argument("market_annual_vol must be > 0");
  }
  for (double v : style_annual_vols) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("style vols must be finite and >= 0");
    }
  }
  if (!(specific_vol_lo > 0.0) || !(specific_vol_hi >= specific_vol_lo) ||
      !std::isfinite(specific_vol_hi)) {
    throw std::invalid_argument("specific vol range must satisfy 0 < lo <= hi");
  }
  if (!(target_gamma >= 0.0 && target_gamma <= 1.0)) {
    throw std::invalid_argument("target_gamma must lie in [0, 1]");
  }
  if (!(trading_days_per_year > 0.0)) {
    throw std::invalid_argument("trading_days_per_year must be > 0");
  }
  if (!(style_exposure_raw_variance > 0.0)) {
    throw std::invalid_argument("style_exposure_raw_variance must be > 0");
  }
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell,
                          std::uint64_t trial_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ cell);
  return splitmix64(h ^ trial_index);
}

std::uint64_t cell_key(Index n_assets, double gamma) {
  const auto g = static_cast<std::uint64_t>(std::llround(gamma * 1e6));
  return splitmix64(static_cast<std::uint64_t>(n_assets)) ^ g;
}

Vector build_market_beta(Index n_assets, double target_gamma, Rng& rng) {
  if (n_assets < 2) {
    throw std::invalid_argument("build_market_beta: n_assets must be >= 2");
  }
  if (!(target_gamma >= 0.0 && target_gamma <= 1.0)) {
    throw std::invalid_argument(
        "build_market_beta: target_gamma must lie in [0, 1], got " +
        std::to_string(target_gamma));
  }
  const ReferenceVector z(n_assets);
  if (target_gamma == 1.0) return z.materialize();

  Vector g = standard_normal(n_assets, rng);
  // Project out z, normalize, and project once more to clean up rounding.
  for (int pass = 0; pass < 2; ++pass) {
    g.array() -= z.dot(g) * z.entry();
    g /= g.norm();
  }
  Vector beta = target_gamma * z.materialize() +
                std::sqrt(1.0 - target_gamma * target_gamma) * g;
  return beta / beta.norm();
}

Matrix build_style_exposures(Index n_assets, Index n_styles,
                             double raw_variance, Rng& rng) {
  if (n_styles < 0) {
    throw std::invalid_argument("build_style_exposures: n_styles must be >= 0");
  }
  if (!(raw_variance > 0.0)) {
    throw std::invalid_argument("build_style_exposures: raw_variance must be > 0");
  }
  const double sd = std::sqrt(raw_variance);
  Matrix out(n_assets, n_styles);
  for (Index k = 0; k < n_styles; ++k) {
    Vector col = sd * standard_normal(n_assets, rng);
    out.col(k) = col / col.norm();
  }
  return out;
}

FactorModelSpec build_model(const CalibrationConfig& config, Rng& rng) {
  config.validate();
  const Index n = config.n_assets;
  const Index k = config.n_factors;
  const double days = config.trading_days_per_year;

  Matrix exposures(n, k);
  exposures.col(0) = build_market_beta(n, config.target_gamma, rng);
  if (k > 1) {
    exposures.rightCols(k - 1) = build_style_exposures(
        n, k - 1, config.style_exposure_raw_variance, rng);
  }

  Vector factor_variances(k);
  factor_variances(0) = static_cast<double>(n) * config.market_annual_vol *
                        config.market_annual_vol / days;
  const double style_scale =
      config.style_variance_scaling == StyleVarianceScaling::Dimension
          ? static_cast<double>(n)
          : 1.0;
  for (Index j = 1; j < k; ++j) {
    const double vol = config.style_annual_vols[static_cast<std::size_t>(j - 1)];
    factor_variances(j) = style_scale * vol * vol / days;
  }

  Vector specific(n);
  const double lo = config.specific_vol_lo;
  const double hi = config.specific_vol_hi;
  if (config.specific_draw == SpecificDraw::Volatility) {
    std::uniform_real_distribution<double> vol(lo, hi);
    for (Index i = 0; i < n; ++i) {
      const double v = vol(rng);
      specific(i) = v * v / days;
    }
  } else {
    std::uniform_real_distribution<double> var(lo * lo, hi * hi);
    for (Index i = 0; i < n; ++i) specific(i) = var(rng) / days;
  }

  return FactorModelSpec(std::move(exposures), std::move(factor_variances),
                         std::move(specific));
}

ReturnsPanel simulate_returns(const FactorModelSpec& model, Index n_obs,
                              Rng& rng) {
  if (n_obs < 1) {
    throw std::invalid_argument("simulate_returns: n_obs must be >= 1");
  }
  const Index n = model.n_assets();
  const Index k = model.n_factors();
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix factors(k, n_obs);
  const Vector factor_sd = model.factor_variances().cwiseSqrt();
  for (Index t = 0; t < n_obs; ++t) {
    for (Index j = 0; j < k; ++j) factors(j, t) = factor_sd(j) * normal(rng);
  }
  Matrix returns = model.exposures() * factors;
  const Vector specific_sd = model.specific_variances().cwiseSqrt();
  for (Index t = 0; t < n_obs; ++t) {
    for (Index i = 0; i < n; ++i) returns(i, t) += specific_sd(i) * normal(rng);
  }
  return ReturnsPanel(std::move(returns));
}

double gamma_from_tau(double tau_squared) {
  if (!(tau_squared >= 0.0)) {
    throw std::invalid_argument("gamma_from_tau: tau_squared must be >= 0");
  }
  return std::pow(1.0 + tau_squared, -0.25);
}

}  // namespace dbpca
