#pragma once

// Closed-form portfolio quantities for the homogeneous one-factor model
// Sigma = sigma2 beta beta^T + delta2 I and an estimate
// Sigma_hat = sigma2_hat bhat bhat^T + delta2_hat I, written in terms of the
// concentrations among beta, bhat and z. w and w_hat are the normalized
// minimum-variance portfolios; w_bar = (a / gamma_{beta,z}) z - beta with
// a = 1 + delta2 / sigma2 is the unnormalized one (likewise w_hat_bar).
// Exact values serve as oracles for direct vector computations; asymptotic
// values are the N -> infinity equivalents at fixed sigma2 / N.

#include "dbpca/metrics.h"

namespace dbpca::identities {

struct PortfolioValues {
  double w_sq_norm;             // w^T w
  double w_bar_sq_norm;         // w_bar^T w_bar
  double w_hat_dot_w;           // w_hat^T w
  double w_dot_beta;            // w^T beta
  double w_bar_dot_beta;        // w_bar^T beta
  double w_hat_dot_beta;        // w_hat^T beta
  double w_hat_bar_dot_beta;    // w_hat_bar^T beta
  double is_factor_risk;        // sigma2_hat (bhat^T w_hat)^2
  double is_factor_risk_bar;    // sigma2_hat (bhat^T w_hat_bar)^2
  double oos_factor_risk;       // sigma2 (beta^T w_hat)^2
  double oos_factor_risk_bar;   // sigma2 (beta^T w_hat_bar)^2
  double is_specific_risk;      // w_hat^T Delta_hat w_hat
  double is_specific_risk_bar;  // w_hat_bar^T Delta_hat w_hat_bar
  double oos_specific_risk;     // w_hat^T Delta w_hat
  double oos_specific_risk_bar; // w_hat_bar^T Delta w_hat_bar
  double te_squared;            // (w_hat - w)^T Sigma (w_hat - w)
  double forecast_ratio;        // w_hat^T Sigma_hat w_hat / w_hat^T Sigma w_hat
};

PortfolioValues exact_portfolio_values(const HomogeneousSetting& s);

/// Large-N equivalents. Requires both gamma_{beta,z} and gamma_{bhat,z} < 1.
PortfolioValues asymptotic_portfolio_values(const HomogeneousSetting& s);

/// Specializations when bhat lies on the great circle through beta and z
/// (gamma_{beta,bhat} = gamma_{beta,z} / gamma_{bhat,z}).
struct GreatCircleValues {
  double oos_factor_risk;
  double oos_factor_risk_bar;
  double forecast_ratio;
  double asymptotic_oos_factor_risk;
  double asymptotic_oos_factor_risk_bar;
  double asymptotic_te_squared;
  double asymptotic_forecast_ratio;
};

GreatCircleValues great_circle_values(const HomogeneousSetting& s);

/// Four identities in sigma2, delta2 form.
struct MinVarIdentities {
  double factor_risk_optimal;    // sigma2 (beta^T w)^2
  double factor_risk_estimated;  // sigma2 (beta^T w_hat)^2
  double w_sq_norm;              // w^T w
  double w_hat_dot_w;            // w_hat^T w
};

MinVarIdentities min_var_identities(const HomogeneousSetting& s);
MinVarIdentities asymptotic_min_var_identities(const HomogeneousSetting& s);

/// w proportional to beta_mv z - beta with beta_mv = (sigma2 + delta2) /
/// (sigma2 gamma_{beta,z}), normalized to sum to one.
Vector homogeneous_min_var(double sigma2, double delta2, const VectorRef& beta);

}  // namespace dbpca::identities
