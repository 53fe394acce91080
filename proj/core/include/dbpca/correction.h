#pragma once

// Geodesic shrinkage of the leading PCA eigenvector toward z, the parameter
// choices for it (finite oracle, asymptotic oracle, data driven), the
// compatible eigenvalue correction, and the assembled corrected estimator.

#include <variant>

#include "dbpca/model.h"
#include "dbpca/spectral.h"

namespace dbpca {

/// (b + rho z) / sqrt(1 + 2 rho gamma_{b,z} + rho^2)
Vector geodesic_shrink(const VectorRef& bhat, const ReferenceVector& z,
                       double rho);

/// Finite-sample optimal rho: maximizes gamma_{beta, bhat(rho)}.
/// Throws DegenerateGeometryError when the denominator vanishes.
double oracle_rho(const VectorRef& beta, const VectorRef& bhat,
                  const ReferenceVector& z);

/// oracle_rho with every concentration taken in the diag(d)^{-1} inner product.
double oracle_rho_heterogeneous(const VectorRef& beta, const VectorRef& bhat,
                                const ReferenceVector& z,
                                const VectorRef& specific_variances);

/// gamma / (1 - gamma^2) * (psi - 1/psi); requires 0 <= gamma < 1, psi >= 1.
double asymptotic_oracle_rho(double gamma_beta_z, double psi);

/// (Tr S - lambda_1) / (N - 1 - N/T), clamped at zero.
double estimate_specific_variance(double trace_s, double lambda1,
                                  Index n_assets, Index n_obs);

/// N / (T lambda_1 - N delta^2). Throws WeakFactorError if the denominator
/// is not positive.
double estimate_c1(double lambda1, double delta2_hat, Index n_assets,
                   Index n_obs);

struct RhoSelection {
  double rho;
  bool clamped;
};

/// rho = x / (1 - x^2) * (psi - 1/psi) with |x| clamped to 1 - 1e-6.
/// x is the (estimated or supplied) concentration after debiasing.
RhoSelection select_rho(double x, double psi);

/// select_rho(psi_hat * gamma_bhat_z, psi_hat); logs a warning when clamped.
double data_driven_rho(double gamma_bhat_z, double psi_hat);

/// (gamma_{bhat,z} / gamma_{bhat_rho,z})^2 * sigma2_hat
double compatible_eigenvalue(double sigma2_hat, double gamma_bhat_z,
                             double gamma_corrected_z);

/// (gamma_{beta,z} - gamma_{beta,bhat} gamma_{bhat,z}) / (1 - gamma_{bhat,z}^2)
double error_driver(const VectorRef& beta, const VectorRef& bhat,
                    const ReferenceVector& z);

struct ShrinkageParameters {
  double delta2_hat;
  double c1_hat;
  double psi_hat;
};

/// delta^2, c1 and psi = sqrt(1 + delta^2 c1) from spectral summaries.
/// Propagates WeakFactorError from estimate_c1.
ShrinkageParameters estimate_shrinkage_parameters(double trace_s,
                                                  double lambda1,
                                                  Index n_assets, Index n_obs);

/// Spectral summaries after rescaling assets by d^{-1/2}.
struct WhitenedInputs {
  Vector exposures;  // unit, d^{-1/2} bhat normalized
  Vector reference;  // unit, d^{-1/2} z normalized
  double trace;      // sum_n diag(S)_n / d_n
  double lambda1;    // lambda_1 * ||d^{-1/2} bhat||^2
};

WhitenedInputs whiten_inputs(const SampleCovariance& cov,
                             const SpectralResult& spectral,
                             const VectorRef& specific_variances);

enum class Whitening {
  EstimatedSpecific,  // estimate rho in d_hat^{-1/2} coordinates
  None,               // estimate rho from the raw spectrum
};

namespace mode {
struct DataDriven {};
/// Debiased concentration replaced by the supplied gamma_{beta,z}.
struct OracleGamma {
  double gamma_beta_z;
};
/// Debiased concentration replaced by gamma_{beta,z} measured in the same
/// coordinates the estimator works in (d_hat^{-1/2}-weighted when whitening).
struct OracleWhitenedGamma {
  Vector beta;
};
/// rho from the finite-sample oracle formula against the supplied beta.
struct FiniteOracle {
  Vector beta;
};
}  // namespace mode

using CorrectionMode = std::variant<mode::DataDriven, mode::OracleGamma,
                                    mode::OracleWhitenedGamma,
                                    mode::FiniteOracle>;

struct CorrectionOptions {
  Whitening whitening = Whitening::EstimatedSpecific;
};

/// delta2_hat, c1_hat and psi_hat are in the coordinates used to pick rho
/// (whitened unless Whitening::None).
struct CorrectionDiagnostics {
  double delta2_hat = 0.0;
  double c1_hat = 0.0;
  double psi_hat = 1.0;
  double rho = 0.0;
  double gamma_bhat_z = 0.0;
  double gamma_corrected_z = 0.0;
  bool fallback = false;  // weak factor: rho forced to 0
  bool clamped = false;   // concentration clamped inside select_rho
};

struct CorrectionResult {
  Vector corrected_exposures;
  double corrected_factor_variance;
  Vector corrected_specific_variances;
  CorrectionDiagnostics diagnostics;
};

struct CorrectedEstimate {
  CorrectionResult correction;
  EstimatedFactorModel model;  // corrected one-factor model
  EstimatedFactorModel pca;    // uncorrected PCA model
};

CorrectedEstimate corrected_estimator(const SampleCovariance& cov,
                                      const SpectralResult& spectral,
                                      const CorrectionMode& mode,
                                      const CorrectionOptions& options = {});
CorrectedEstimate corrected_estimator(const ReturnsPanel& panel,
                                      const CorrectionMode& mode,
                                      const CorrectionOptions& options = {});

}  // namespace dbpca
