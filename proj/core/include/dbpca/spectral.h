#pragma once

// Sample covariance S = R R^T / T (no demeaning: returns are modeled as mean
// zero) and the leading principal component used by the one-factor PCA model.

#include "dbpca/model.h"

namespace dbpca {

/// Implicit view of S for a panel. Holds a reference; the panel must outlive it.
class SampleCovariance {
 public:
  explicit SampleCovariance(const ReturnsPanel& panel);
  SampleCovariance(ReturnsPanel&&) = delete;

  const ReturnsPanel& panel() const { return panel_; }
  Index n_assets() const { return panel_.n_assets(); }
  Index n_obs() const { return panel_.n_obs(); }

  /// S x = R (R^T x) / T
  Vector apply(const VectorRef& x) const;
  const Vector& diagonal() const { return diagonal_; }
  double trace() const { return trace_; }
  /// Dense N x N matrix; meant for tests and small problems.
  Matrix materialize() const;

 private:
  const ReturnsPanel& panel_;
  Vector diagonal_;
  double trace_;
};

struct SpectralResult {
  double leading_eigenvalue;   // lambda_1 of S
  Vector leading_eigenvector;  // unit, oriented so that u^T z >= 0
  double trace;                // Tr(S)
};

/// Leading eigenpair of S. Uses the T x T Gram matrix R^T R / T when T < N and
/// the dense N x N matrix otherwise. Throws DegeneratePanelError when the
/// leading eigenvalue is zero.
SpectralResult leading_eigenpair(const SampleCovariance& cov);
SpectralResult leading_eigenpair(const ReturnsPanel& panel);

/// 1e-10 times the mean sample variance; lower bound for specific variances.
double specific_variance_floor(const SampleCovariance& cov);

/// max(diag(S) - sigma2 * b.^2, floor)
Vector residual_specific_variances(const SampleCovariance& cov, double sigma2,
                                   const VectorRef& exposures);

EstimatedFactorModel pca_estimate(const SampleCovariance& cov,
                                  const SpectralResult& spectral);
EstimatedFactorModel pca_estimate(const ReturnsPanel& panel);

}  // namespace dbpca
