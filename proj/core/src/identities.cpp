#include "dbpca/identities.h"

#include <cmath>
#include <stdexcept>

namespace dbpca::identities {

namespace {

struct Derived {
  double n;
  double a;      // 1 + delta2 / sigma2
  double a_hat;  // 1 + delta2_hat / sigma2_hat
  double g;      // gamma_{beta,z}
  double gh;     // gamma_{bhat,z}
  double gbb;    // gamma_{beta,bhat}
  double r;      // gamma_{beta,z} / gamma_{bhat,z}
};

Derived derive(const HomogeneousSetting& s) {
  s.validate();
  return Derived{static_cast<double>(s.n_assets),
                 1.0 + s.delta2 / s.sigma2,
                 1.0 + s.delta2_hat / s.sigma2_hat,
                 s.gamma_beta_z,
                 s.gamma_bhat_z,
                 s.gamma_beta_bhat,
                 s.gamma_beta_z / s.gamma_bhat_z};
}

double bar_sq_norm(double a, double g) { return a * a / (g * g) - 2.0 * a + 1.0; }

double normalizer(double a, double g) { return a / g - g; }

void require_interior(const HomogeneousSetting& s) {
  if (!(s.gamma_beta_z < 1.0) || !(s.gamma_bhat_z < 1.0)) {
    throw std::invalid_argument(
        "asymptotic forms need gamma_{beta,z} < 1 and gamma_{bhat,z} < 1");
  }
}

}  // namespace

PortfolioValues exact_portfolio_values(const HomogeneousSetting& s) {
  const Derived d = derive(s);
  const double sn = std::sqrt(d.n);
  const double k = normalizer(d.a, d.g);
  const double kh = normalizer(d.a_hat, d.gh);

  PortfolioValues v{};
  v.w_bar_sq_norm = bar_sq_norm(d.a, d.g);
  v.w_sq_norm = v.w_bar_sq_norm / (d.n * k * k);
  v.w_hat_dot_w = (d.a * d.a_hat / (d.g * d.gh) + d.gbb - d.r * d.a_hat -
                   d.a * d.gh / d.g) /
                  (d.n * k * kh);
  v.w_bar_dot_beta = s.delta2 / s.sigma2;
  v.w_dot_beta = v.w_bar_dot_beta / (sn * k);
  v.w_hat_bar_dot_beta = s.delta2_hat / s.sigma2_hat * d.r + (d.r - d.gbb);
  v.w_hat_dot_beta = v.w_hat_bar_dot_beta / (sn * kh);

  v.is_factor_risk_bar = s.delta2_hat * s.delta2_hat / s.sigma2_hat;
  v.is_factor_risk = v.is_factor_risk_bar / (d.n * kh * kh);
  v.oos_factor_risk = s.sigma2 * v.w_hat_dot_beta * v.w_hat_dot_beta;
  v.oos_factor_risk_bar = s.sigma2 * v.w_hat_bar_dot_beta * v.w_hat_bar_dot_beta;

  const double w_hat_bar_sq = bar_sq_norm(d.a_hat, d.gh);
  const double w_hat_sq = w_hat_bar_sq / (d.n * kh * kh);
  v.is_specific_risk_bar = s.delta2_hat * w_hat_bar_sq;
  v.is_specific_risk = s.delta2_hat * w_hat_sq;
  v.oos_specific_risk_bar = s.delta2 * w_hat_bar_sq;
  v.oos_specific_risk = s.delta2 * w_hat_sq;

  const double factor_gap = v.w_hat_dot_beta - v.w_dot_beta;
  v.te_squared = s.sigma2 * factor_gap * factor_gap +
                 s.delta2 * (w_hat_sq - 2.0 * v.w_hat_dot_w + v.w_sq_norm);
  v.forecast_ratio = (v.is_factor_risk_bar + v.is_specific_risk_bar) /
                     (v.oos_factor_risk_bar + v.oos_specific_risk_bar);
  return v;
}

PortfolioValues asymptotic_portfolio_values(const HomogeneousSetting& s) {
  require_interior(s);
  const Derived d = derive(s);
  const double sn = std::sqrt(d.n);
  const double sin2 = 1.0 - d.g * d.g;
  const double sin2_hat = 1.0 - d.gh * d.gh;
  const double tilt = d.r - d.gbb;

  PortfolioValues v{};
  v.w_sq_norm = 1.0 / (d.n * sin2);
  v.w_bar_sq_norm = sin2 / (d.g * d.g);
  v.w_hat_dot_w = (1.0 - d.gh * d.gh - d.g * d.g + d.g * d.gh * d.gbb) /
                  (d.n * sin2_hat * sin2);
  v.w_dot_beta = s.delta2 / (sn * s.sigma2) * d.g / sin2;
  v.w_bar_dot_beta = s.delta2 / s.sigma2;
  v.w_hat_dot_beta = d.gh / sin2_hat * tilt / sn;
  v.w_hat_bar_dot_beta = tilt;

  v.is_factor_risk = s.delta2_hat * s.delta2_hat / (d.n * s.sigma2_hat) *
                     d.gh * d.gh / (sin2_hat * sin2_hat);
  v.is_factor_risk_bar = s.delta2_hat * s.delta2_hat / s.sigma2_hat;
  v.oos_factor_risk =
      s.sigma2 / d.n * d.gh * d.gh / (sin2_hat * sin2_hat) * tilt * tilt;
  v.oos_factor_risk_bar = s.sigma2 * tilt * tilt;
  v.is_specific_risk = s.delta2_hat / (d.n * sin2_hat);
  v.is_specific_risk_bar = s.delta2_hat * sin2_hat / (d.gh * d.gh);
  v.oos_specific_risk = s.delta2 / (d.n * sin2_hat);
  v.oos_specific_risk_bar = s.delta2 * sin2_hat / (d.gh * d.gh);

  v.te_squared = s.sigma2 / d.n * d.gh * d.gh / (sin2_hat * sin2_hat) * tilt * tilt +
                 s.delta2 * (d.gh * d.gh - d.g * d.g) / (d.n * sin2 * sin2_hat);
  v.forecast_ratio =
      s.delta2_hat /
      (s.sigma2 * d.gh * d.gh / sin2_hat * tilt * tilt + s.delta2);
  return v;
}

GreatCircleValues great_circle_values(const HomogeneousSetting& s) {
  const Derived d = derive(s);
  const double sn = std::sqrt(d.n);
  const double kh = normalizer(d.a_hat, d.gh);
  const double ratio_hat = s.delta2_hat / s.sigma2_hat;
  const double w_hat_bar_sq = bar_sq_norm(d.a_hat, d.gh);

  GreatCircleValues v{};
  const double bar_dot = ratio_hat * d.r;
  v.oos_factor_risk = s.sigma2 * std::pow(bar_dot / (sn * kh), 2);
  v.oos_factor_risk_bar = s.sigma2 * bar_dot * bar_dot;
  v.forecast_ratio =
      (s.delta2_hat * s.delta2_hat / s.sigma2_hat + s.delta2_hat * w_hat_bar_sq) /
      (v.oos_factor_risk_bar + s.delta2 * w_hat_bar_sq);

  const double sin2_hat = 1.0 - d.gh * d.gh;
  const double sin2 = 1.0 - d.g * d.g;
  v.asymptotic_oos_factor_risk = s.sigma2 / d.n * d.gh * d.gh /
                                 (sin2_hat * sin2_hat) * ratio_hat * ratio_hat *
                                 d.r * d.r;
  v.asymptotic_oos_factor_risk_bar =
      s.sigma2 * ratio_hat * ratio_hat * d.r * d.r;
  v.asymptotic_te_squared =
      s.delta2 * (d.gh * d.gh - d.g * d.g) / (d.n * sin2 * sin2_hat);
  v.asymptotic_forecast_ratio = s.delta2_hat / s.delta2;
  return v;
}

MinVarIdentities min_var_identities(const HomogeneousSetting& s) {
  const Derived d = derive(s);
  const double s2 = s.sigma2;
  const double d2 = s.delta2;
  const double s2h = s.sigma2_hat;
  const double d2h = s.delta2_hat;
  const double scaled = s2 / d.n;
  const double g = d.g;

  const double core = d2 + s2 * (1.0 - g * g);
  const double core_hat = d2h + s2h * (1.0 - d.gh * d.gh);
  MinVarIdentities v{};
  v.factor_risk_optimal = scaled * std::pow(d2 * g / core, 2);
  v.factor_risk_estimated =
      scaled * std::pow((g * d2h + s2h * (g - d.gbb * d.gh)) / core_hat, 2);
  v.w_sq_norm =
      ((s2 + d2) * (s2 + d2) - (s2 + 2.0 * d2) * s2 * g * g) / (d.n * core * core);
  const double e = ((d2h + s2h) * g - s2h * d.gh * d.gbb) / core_hat;
  v.w_hat_dot_w = (d2 + s2 - s2 * g * e) / (core * d.n);
  return v;
}

MinVarIdentities asymptotic_min_var_identities(const HomogeneousSetting& s) {
  require_interior(s);
  const Derived d = derive(s);
  const double sin2 = 1.0 - d.g * d.g;
  const double e = (d.g - d.gbb * d.gh) / (1.0 - d.gh * d.gh);
  const double scaled = s.sigma2 / d.n;

  MinVarIdentities v{};
  v.factor_risk_optimal = s.delta2 * s.delta2 / (scaled * d.n * d.n) *
                          std::pow(d.g / sin2, 2);
  v.factor_risk_estimated = scaled * e * e;
  v.w_sq_norm = 1.0 / (d.n * sin2);
  v.w_hat_dot_w = (1.0 - d.g * e) / (d.n * sin2);
  return v;
}

Vector homogeneous_min_var(double sigma2, double delta2, const VectorRef& beta) {
  if (!(sigma2 > 0.0) || !(delta2 > 0.0)) {
    throw std::invalid_argument("homogeneous_min_var: variances must be > 0");
  }
  const ReferenceVector z(beta.size());
  const double gamma = concentration(beta, z);
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("homogeneous_min_var: gamma_{beta,z} must be > 0");
  }
  const double beta_mv = (sigma2 + delta2) / (sigma2 * gamma);
  Vector w = beta_mv * z.materialize() - beta;
  return w / w.sum();
}

}  // namespace dbpca::identities
