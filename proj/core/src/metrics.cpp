#include "dbpca/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dbpca {

namespace {

constexpr double kAtZ = 1e-12;

bool at_z(double gamma) { return std::abs(1.0 - gamma) <= kAtZ; }

}  // namespace

double tracking_error(const PortfolioWeights& w_hat,
                      const PortfolioWeights& w_star,
                      const CovarianceModel& true_cov) {
  if (w_hat.size() != w_star.size() || w_hat.size() != true_cov.n_assets()) {
    throw std::invalid_argument("tracking_error: dimension mismatch");
  }
  const Vector diff = w_star.weights() - w_hat.weights();
  return std::sqrt(std::max(0.0, true_cov.quadratic_form(diff)));
}

double forecast_ratio(const PortfolioWeights& w_hat,
                      const CovarianceModel& est_cov,
                      const CovarianceModel& true_cov) {
  if (w_hat.size() != est_cov.n_assets() || w_hat.size() != true_cov.n_assets()) {
    throw std::invalid_argument("forecast_ratio: dimension mismatch");
  }
  const double truth = true_cov.quadratic_form(w_hat.weights());
  if (!(truth > 0.0)) {
    throw std::invalid_argument("forecast_ratio: true variance is zero");
  }
  return est_cov.quadratic_form(w_hat.weights()) / truth;
}

double annualize_vol(double per_period_vol, double periods_per_year) {
  if (!(per_period_vol >= 0.0) || !(periods_per_year > 0.0)) {
    throw std::invalid_argument(
        "annualize_vol: vol must be >= 0 and periods per year > 0");
  }
  return per_period_vol * std::sqrt(periods_per_year);
}

void HomogeneousSetting::validate() const {
  if (n_assets < 1) throw std::invalid_argument("n_assets must be >= 1");
  if (!(sigma2 > 0.0) || !(sigma2_hat > 0.0)) {
    throw std::invalid_argument("factor variances must be > 0");
  }
  if (!(delta2 > 0.0) || !(delta2_hat > 0.0)) {
    throw std::invalid_argument("specific variances must be > 0");
  }
  for (double g : {gamma_beta_z, gamma_bhat_z, gamma_beta_bhat}) {
    if (!(g >= -1.0 && g <= 1.0)) {
      throw std::invalid_argument("concentrations must lie in [-1, 1]");
    }
  }
  if (!(gamma_beta_z > 0.0) || !(gamma_bhat_z > 0.0)) {
    throw std::invalid_argument("gamma_{beta,z} and gamma_{bhat,z} must be > 0");
  }
}

AsymptoticPrediction asymptotic_predictions(AsymptoticCase which,
                                            const HomogeneousSetting& s) {
  s.validate();
  const bool beta_at_z = at_z(s.gamma_beta_z);
  const bool bhat_at_z = at_z(s.gamma_bhat_z);
  const double n = static_cast<double>(s.n_assets);
  const double g = s.gamma_beta_z;
  const double gh = s.gamma_bhat_z;

  switch (which) {
    case AsymptoticCase::BothBelowOne: {
      if (beta_at_z || bhat_at_z) {
        throw std::invalid_argument(
            "asymptotic_predictions: case (i) needs both concentrations < 1");
      }
      const double sin2_hat = 1.0 - gh * gh;
      const double e = (g - s.gamma_beta_bhat * gh) / sin2_hat;
      const double te2 = s.sigma2 / n * e * e +
                         s.delta2 * (gh * gh - g * g) /
                             (n * (1.0 - g * g) * sin2_hat);
      const double ratio =
          s.delta2_hat / (s.delta2 + s.sigma2 * e * e * sin2_hat);
      return {te2, ratio};
    }
    case AsymptoticCase::EstimateAtZ:
      if (beta_at_z || !bhat_at_z) {
        throw std::invalid_argument(
            "asymptotic_predictions: case (ii) needs gamma_{beta,z} < 1 = gamma_{bhat,z}");
      }
      return {s.sigma2 * g * g / n, s.sigma2_hat / (s.sigma2 * g * g)};
    case AsymptoticCase::TruthAtZ: {
      if (!beta_at_z || bhat_at_z) {
        throw std::invalid_argument(
            "asymptotic_predictions: case (iii) needs gamma_{bhat,z} < 1 = gamma_{beta,z}");
      }
      const double sin2_hat = 1.0 - gh * gh;
      return {s.delta2 * gh * gh / (n * sin2_hat),
              s.delta2_hat / (s.sigma2 * sin2_hat)};
    }
    case AsymptoticCase::BothAtZ:
      if (!beta_at_z || !bhat_at_z) {
        throw std::invalid_argument(
            "asymptotic_predictions: case (iv) needs both concentrations = 1");
      }
      return {0.0, s.sigma2_hat / s.sigma2};
  }
  throw std::invalid_argument("asymptotic_predictions: unknown case");
}

double pca_error_prediction(double gamma_beta_z, double psi) {
  if (!(psi >= 1.0)) {
    throw std::invalid_argument("pca_error_prediction: psi must be >= 1");
  }
  if (!(gamma_beta_z >= 0.0 && gamma_beta_z < 1.0)) {
    throw std::invalid_argument("pca_error_prediction: gamma must lie in [0, 1)");
  }
  const double inv2 = 1.0 / (psi * psi);
  return gamma_beta_z * (1.0 - inv2) / (1.0 - inv2 * gamma_beta_z * gamma_beta_z);
}

double simple_portfolio_ratio_prediction(const VectorRef& w,
                                         const VectorRef& beta,
                                         const VectorRef& bhat, double sigma2,
                                         double sigma2_hat) {
  if (w.size() != beta.size() || w.size() != bhat.size()) {
    throw std::invalid_argument(
        "simple_portfolio_ratio_prediction: dimension mismatch");
  }
  const double exposure = w.dot(beta);
  if (std::abs(exposure) <= 1e-12 * w.norm() * beta.norm()) {
    throw std::invalid_argument(
        "simple_portfolio_ratio_prediction: w^T beta is zero");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument(
        "simple_portfolio_ratio_prediction: sigma2 must be > 0");
  }
  const double c = w.dot(bhat) / exposure;
  return sigma2_hat / sigma2 * c * c;
}

}  // namespace dbpca
