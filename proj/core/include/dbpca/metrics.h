#pragma once

// Portfolio error metrics and the large-N predictors used as analytic oracles.
// Everything is per period; annualize only when reporting.

#include <string>

#include "dbpca/model.h"
#include "dbpca/portfolio.h"

namespace dbpca {

struct TrialReport {
  std::string estimator_name;
  double tracking_error_annual = 0.0;
  double true_vol_annual = 0.0;
  double forecast_ratio_minvar = 0.0;
  double forecast_ratio_equal = 0.0;
};

/// sqrt((w* - w)^T Sigma (w* - w))
double tracking_error(const PortfolioWeights& w_hat,
                      const PortfolioWeights& w_star,
                      const CovarianceModel& true_cov);

/// (w^T Sigma_hat w) / (w^T Sigma w)
double forecast_ratio(const PortfolioWeights& w_hat,
                      const CovarianceModel& est_cov,
                      const CovarianceModel& true_cov);

double annualize_vol(double per_period_vol, double periods_per_year);

/// Which large-N regime applies: concentrations of the true (beta) and
/// estimated (bhat) exposures toward z below one or equal to one.
enum class AsymptoticCase {
  BothBelowOne,      // gamma_{beta,z} < 1, gamma_{bhat,z} < 1
  EstimateAtZ,       // gamma_{beta,z} < 1, gamma_{bhat,z} = 1
  TruthAtZ,          // gamma_{beta,z} = 1, gamma_{bhat,z} < 1
  BothAtZ,           // gamma_{beta,z} = gamma_{bhat,z} = 1
};

/// Homogeneous one-factor truth (sigma2, delta2) and estimate
/// (sigma2_hat, delta2_hat) with the three concentrations among beta, bhat, z.
/// Factor variances are the full N-scaled values.
struct HomogeneousSetting {
  Index n_assets;
  double sigma2;
  double delta2;
  double sigma2_hat;
  double delta2_hat;
  double gamma_beta_z;
  double gamma_bhat_z;
  double gamma_beta_bhat;

  void validate() const;
};

struct AsymptoticPrediction {
  double te_squared;
  double forecast_ratio;
};

/// Large-N squared tracking error and min-var forecast ratio. In the generic
/// case the ratio uses delta_hat^2 / (delta^2 + sigma^2 E^2 (1 - gamma_{bhat,z}^2)),
/// which stays finite when E = 0. Throws if the case does not match the
/// concentrations in the setting.
AsymptoticPrediction asymptotic_predictions(AsymptoticCase which,
                                            const HomogeneousSetting& s);

/// gamma (1 - psi^-2) / (1 - psi^-2 gamma^2): the limiting error driver of PCA.
double pca_error_prediction(double gamma_beta_z, double psi);

/// (sigma2_hat / sigma2) * ((w^T bhat) / (w^T beta))^2 for a fixed portfolio w.
double simple_portfolio_ratio_prediction(const VectorRef& w,
                                         const VectorRef& beta,
                                         const VectorRef& bhat, double sigma2,
                                         double sigma2_hat);

}  // namespace dbpca
