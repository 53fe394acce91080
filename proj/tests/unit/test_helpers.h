#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dbpca/identities.h"
#include "dbpca/metrics.h"
#include "dbpca/model.h"
#include "dbpca/portfolio.h"
#include "dbpca/simgen.h"

namespace dbpca::testing {

inline Vector random_unit(Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v / v.norm();
}

/// Unit vector with a nonnegative component along z.
inline Vector random_oriented_unit(Index n, Rng& rng) {
  return orient(random_unit(n, rng), ReferenceVector(n));
}

/// Orthonormal pair (e1, e2), both orthogonal to z.
inline std::pair<Vector, Vector> orthonormal_to_z(Index n, Rng& rng) {
  const Vector z = ReferenceVector(n).materialize();
  Vector e1 = random_unit(n, rng);
  e1 -= e1.dot(z) * z;
  e1.normalize();
  Vector e2 = random_unit(n, rng);
  e2 -= e2.dot(z) * z + e2.dot(e1) * e1;
  e2.normalize();
  return {e1, e2};
}

/// beta and bhat with prescribed gamma_{beta,z}, gamma_{bhat,z} and cosine
/// `c` between their components orthogonal to z.
struct Pair {
  Vector beta;
  Vector bhat;
};

inline Pair vectors_with_concentrations(Index n, double g, double gh, double c,
                                        Rng& rng) {
  const Vector z = ReferenceVector(n).materialize();
  const auto [e1, e2] = orthonormal_to_z(n, rng);
  Pair p;
  p.beta = g * z + std::sqrt(1.0 - g * g) * e1;
  p.bhat = gh * z + std::sqrt(1.0 - gh * gh) * (c * e1 + std::sqrt(1.0 - c * c) * e2);
  p.beta.normalize();
  p.bhat.normalize();
  return p;
}

/// One-factor homogeneous model sigma2 beta beta^T + delta2 I.
inline FactorModelSpec one_factor(const Vector& beta, double sigma2, double delta2) {
  return FactorModelSpec(Matrix(beta), Vector::Constant(1, sigma2),
                         Vector::Constant(beta.size(), delta2));
}

/// Truth sigma2 beta beta^T + delta2 I and estimate
/// sigma2_hat bhat bhat^T + delta2_hat I, evaluated with explicit vectors.
struct HomogeneousVectors {
  double sigma2;
  double delta2;
  double sigma2_hat;
  double delta2_hat;
  Vector beta;
  Vector bhat;

  Index n() const { return beta.size(); }

  HomogeneousSetting setting() const {
    const ReferenceVector z(n());
    return HomogeneousSetting{n(),          sigma2,         delta2,
                              sigma2_hat,   delta2_hat,     concentration(beta, z),
                              concentration(bhat, z),  concentration(beta, bhat)};
  }
  CovarianceModel truth() const {
    return CovarianceModel::structured(Matrix(beta), Vector::Constant(1, sigma2),
                                       Vector::Constant(n(), delta2));
  }
  CovarianceModel estimate() const {
    return CovarianceModel::structured(Matrix(bhat), Vector::Constant(1, sigma2_hat),
                                       Vector::Constant(n(), delta2_hat));
  }
  Vector w() const { return min_var_solve(truth()).weights(); }
  Vector w_hat() const { return min_var_solve(estimate()).weights(); }
  Vector w_bar() const {
    const ReferenceVector z(n());
    const double a = 1.0 + delta2 / sigma2;
    return a / z.dot(beta) * z.materialize() - beta;
  }
  Vector w_hat_bar() const {
    const ReferenceVector z(n());
    const double a = 1.0 + delta2_hat / sigma2_hat;
    return a / z.dot(bhat) * z.materialize() - bhat;
  }
};

struct Field {
  std::string name;
  double identities::PortfolioValues::*member;
};

inline const std::vector<Field>& portfolio_fields() {
  static const std::vector<Field> fields{
      {"w_sq_norm", &identities::PortfolioValues::w_sq_norm},
      {"w_bar_sq_norm", &identities::PortfolioValues::w_bar_sq_norm},
      {"w_hat_dot_w", &identities::PortfolioValues::w_hat_dot_w},
      {"w_dot_beta", &identities::PortfolioValues::w_dot_beta},
      {"w_bar_dot_beta", &identities::PortfolioValues::w_bar_dot_beta},
      {"w_hat_dot_beta", &identities::PortfolioValues::w_hat_dot_beta},
      {"w_hat_bar_dot_beta", &identities::PortfolioValues::w_hat_bar_dot_beta},
      {"is_factor_risk", &identities::PortfolioValues::is_factor_risk},
      {"is_factor_risk_bar", &identities::PortfolioValues::is_factor_risk_bar},
      {"oos_factor_risk", &identities::PortfolioValues::oos_factor_risk},
      {"oos_factor_risk_bar", &identities::PortfolioValues::oos_factor_risk_bar},
      {"is_specific_risk", &identities::PortfolioValues::is_specific_risk},
      {"is_specific_risk_bar", &identities::PortfolioValues::is_specific_risk_bar},
      {"oos_specific_risk", &identities::PortfolioValues::oos_specific_risk},
      {"oos_specific_risk_bar", &identities::PortfolioValues::oos_specific_risk_bar},
      {"te_squared", &identities::PortfolioValues::te_squared},
      {"forecast_ratio", &identities::PortfolioValues::forecast_ratio},
  };
  return fields;
}

inline identities::PortfolioValues direct_portfolio_values(const HomogeneousVectors& h) {
  const Vector w = h.w();
  const Vector wh = h.w_hat();
  const Vector wb = h.w_bar();
  const Vector whb = h.w_hat_bar();
  identities::PortfolioValues v{};
  v.w_sq_norm = w.squaredNorm();
  v.w_bar_sq_norm = wb.squaredNorm();
  v.w_hat_dot_w = wh.dot(w);
  v.w_dot_beta = w.dot(h.beta);
  v.w_bar_dot_beta = wb.dot(h.beta);
  v.w_hat_dot_beta = wh.dot(h.beta);
  v.w_hat_bar_dot_beta = whb.dot(h.beta);
  v.is_factor_risk = h.sigma2_hat * std::pow(h.bhat.dot(wh), 2);
  v.is_factor_risk_bar = h.sigma2_hat * std::pow(h.bhat.dot(whb), 2);
  v.oos_factor_risk = h.sigma2 * std::pow(h.beta.dot(wh), 2);
  v.oos_factor_risk_bar = h.sigma2 * std::pow(h.beta.dot(whb), 2);
  v.is_specific_risk = h.delta2_hat * wh.squaredNorm();
  v.is_specific_risk_bar = h.delta2_hat * whb.squaredNorm();
  v.oos_specific_risk = h.delta2 * wh.squaredNorm();
  v.oos_specific_risk_bar = h.delta2 * whb.squaredNorm();
  const Vector diff = wh - w;
  v.te_squared = h.truth().quadratic_form(diff);
  v.forecast_ratio = h.estimate().quadratic_form(wh) / h.truth().quadratic_form(wh);
  return v;
}

// Random homogeneous draw with both concentrations toward z positive.
inline HomogeneousVectors random_draw(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Index n = 3 + static_cast<Index>(unif(rng) * 498);
  const double nd = static_cast<double>(n);
  HomogeneousVectors h;
  h.sigma2 = nd * (0.05 + 2.0 * unif(rng));
  h.delta2 = 0.2 + unif(rng);
  h.sigma2_hat = nd * (0.05 + 2.0 * unif(rng));
  h.delta2_hat = 0.2 + unif(rng);
  h.beta = build_market_beta(n, 0.2 + 0.75 * unif(rng), rng);
  h.bhat = build_market_beta(n, 0.2 + 0.75 * unif(rng), rng);
  return h;
}

}  // namespace dbpca::testing
