#pragma once

// Fully invested minimum-variance and equal-weight portfolios.

#include "dbpca/model.h"

namespace dbpca {

class PortfolioWeights {
 public:
  /// Throws std::invalid_argument unless the weights sum to 1 within 1e-10.
  explicit PortfolioWeights(Vector weights);

  Index size() const { return weights_.size(); }
  const Vector& weights() const { return weights_; }

 private:
  Vector weights_;
};

/// w proportional to diag(d)^{-1} (1 beta_mv - b) with
/// beta_mv = (1 + s2 sum b^2/d) / (s2 sum b/d). Falls back to min_var_solve
/// when s2 sum b/d is zero.
PortfolioWeights min_var_closed_form(double factor_variance,
                                     const VectorRef& exposures,
                                     const VectorRef& specific_variances);
PortfolioWeights min_var_closed_form(const EstimatedFactorModel& model);

/// Sigma^{-1} 1 / (1^T Sigma^{-1} 1). Structured covariances use the Woodbury
/// identity with a K x K solve; dense ones a Cholesky factorization.
PortfolioWeights min_var_solve(const CovarianceModel& cov);

PortfolioWeights equal_weight(Index n_assets);

}  // namespace dbpca
