#pragma once

// Calibrated multi-factor generators: market exposures with a prescribed
// concentration toward z, random style exposures, and Gaussian return panels.

#include <cstdint>
#include <random>
#include <vector>

#include "dbpca/model.h"

namespace dbpca {

using Rng = std::mt19937_64;

/// How factor variances relate to the annual vols.
enum class StyleVarianceScaling {
  None,       // sigma_k^2 = vol_k^2 / days (style factors only)
  Dimension,  // sigma_k^2 = N vol_k^2 / days
};

/// How specific variances are drawn from the annual range [lo, hi].
enum class SpecificDraw {
  Volatility,  // vol ~ U[lo, hi], variance = vol^2 / days
  Variance,    // variance ~ U[lo^2, hi^2] / days
};

struct CalibrationConfig {
  Index n_assets = 500;
  Index n_obs = 250;
  Index n_factors = 4;
  double market_annual_vol = 0.16;
  std::vector<double> style_annual_vols{0.08, 0.04, 0.04};
  double specific_vol_lo = 0.32;
  double specific_vol_hi = 0.64;
  double target_gamma = 0.9;
  double trading_days_per_year = 252.0;
  double style_exposure_raw_variance = 0.75;
  StyleVarianceScaling style_variance_scaling = StyleVarianceScaling::None;
  SpecificDraw specific_draw = SpecificDraw::Volatility;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Deterministic seed for (master, cell, trial); independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell_key,
                          std::uint64_t trial_index);

/// Cell key used by sweeps: mixes N and gamma (rounded to 1e-6).
std::uint64_t cell_key(Index n_assets, double gamma);

/// Unit beta with beta^T z = target_gamma and an isotropic component
/// orthogonal to z. Returns z exactly when target_gamma == 1.
Vector build_market_beta(Index n_assets, double target_gamma, Rng& rng);

/// n_styles unit-norm columns, each normalized from i.i.d. N(0, raw_variance).
Matrix build_style_exposures(Index n_assets, Index n_styles,
                             double raw_variance, Rng& rng);

FactorModelSpec build_model(const CalibrationConfig& config, Rng& rng);

/// N x n_obs panel with columns B phi_t + eps_t.
ReturnsPanel simulate_returns(const FactorModelSpec& model, Index n_obs,
                              Rng& rng);

/// gamma with gamma^2 = 1 / sqrt(1 + tau^2).
double gamma_from_tau(double tau_squared);

}  // namespace dbpca
