#include "dbpca/portfolio.h"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dbpca {

namespace {

PortfolioWeights normalize(Vector raw) {
  const double total = raw.sum();
  if (!(std::abs(total) > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("portfolio weights cannot be normalized");
  }
  return PortfolioWeights(raw / total);
}

}  // namespace

PortfolioWeights::PortfolioWeights(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) {
    throw std::invalid_argument("PortfolioWeights: empty weight vector");
  }
  const double total = weights_.sum();
  if (!(std::abs(total - 1.0) <= 1e-10)) {
    throw std::invalid_argument("PortfolioWeights: weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

PortfolioWeights min_var_closed_form(double factor_variance,
                                     const VectorRef& exposures,
                                     const VectorRef& specific_variances) {
  if (exposures.size() != specific_variances.size()) {
    throw std::invalid_argument("min_var_closed_form: dimension mismatch");
  }
  if (!(specific_variances.minCoeff() > 0.0)) {
    throw std::invalid_argument(
        "min_var_closed_form: specific variances must be > 0");
  }
  if (!(factor_variance >= 0.0)) {
    throw std::invalid_argument("min_var_closed_form: factor variance must be >= 0");
  }
  const Vector inv_d = specific_variances.cwiseInverse();
  const double sum_b = exposures.dot(inv_d);
  const double sum_b2 = exposures.cwiseAbs2().dot(inv_d);
  const double threshold_denom = factor_variance * sum_b;
  if (threshold_denom == 0.0) {
    return min_var_solve(CovarianceModel::structured(
        exposures, Vector::Constant(1, factor_variance), specific_variances));
  }
  const double beta_mv = (1.0 + factor_variance * sum_b2) / threshold_denom;
  Vector raw = inv_d.cwiseProduct(Vector::Constant(exposures.size(), beta_mv) -
                                  exposures);
  return normalize(std::move(raw));
}

PortfolioWeights min_var_closed_form(const EstimatedFactorModel& model) {
  return min_var_closed_form(model.factor_variance(), model.exposures(),
                             model.specific_variances());
}

PortfolioWeights min_var_solve(const CovarianceModel& cov) {
  const Index n = cov.n_assets();
  const Vector ones = Vector::Ones(n);
  if (const auto* s = cov.as_structured()) {
    const Vector inv_d = s->specific_variances.cwiseInverse();
    const Matrix u = s->exposures * s->factor_variances.cwiseSqrt().asDiagonal();
    const Matrix du = inv_d.asDiagonal() * u;
    Matrix capacitance = u.transpose() * du;
    capacitance.diagonal().array() += 1.0;
    Eigen::LLT<Matrix> llt(capacitance);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("min_var_solve: capacitance matrix is singular");
    }
    Vector x = inv_d - du * llt.solve(du.transpose() * ones);
    return normalize(std::move(x));
  }
  Eigen::LLT<Matrix> llt(cov.as_dense()->matrix);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("min_var_solve: covariance is not positive definite");
  }
  return normalize(llt.solve(ones));
}

PortfolioWeights equal_weight(Index n_assets) {
  if (n_assets < 1) {
    throw std::invalid_argument("equal_weight: n_assets must be >= 1");
  }
  return normalize(Vector::Ones(n_assets));
}

}  // namespace dbpca
