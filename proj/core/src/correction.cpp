#include "dbpca/correction.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dbpca/errors.h"

namespace dbpca {

namespace {

constexpr double kClampMargin = 1e-6;
constexpr double kDegenerateTol = 1e-14;

double finite_oracle_formula(double g_beta_z, double g_beta_bhat,
                             double g_bhat_z) {
  const double denom = g_beta_bhat - g_beta_z * g_bhat_z;
  if (std::abs(denom) <= kDegenerateTol) {
    throw DegenerateGeometryError(
        "oracle_rho: gamma_{beta,bhat} - gamma_{beta,z} gamma_{bhat,z} vanishes");
  }
  return (g_beta_z - g_beta_bhat * g_bhat_z) / denom;
}

Vector whiten(const VectorRef& x, const Vector& inv_sd) {
  Vector out = x.cwiseProduct(inv_sd);
  return out / out.norm();
}

}  // namespace

Vector geodesic_shrink(const VectorRef& bhat, const ReferenceVector& z,
                       double rho) {
  if (bhat.size() != z.size()) {
    throw std::invalid_argument("geodesic_shrink: dimension mismatch");
  }
  if (!std::isfinite(rho)) {
    throw std::invalid_argument("geodesic_shrink: rho must be finite");
  }
  const double gamma = z.dot(bhat);
  const double norm2 = 1.0 + 2.0 * rho * gamma + rho * rho;
  if (!(norm2 > kDegenerateTol)) {
    throw std::invalid_argument("geodesic_shrink: bhat + rho z vanishes");
  }
  Vector out = bhat;
  out.array() += rho * z.entry();
  return out / std::sqrt(norm2);
}

double oracle_rho(const VectorRef& beta, const VectorRef& bhat,
                  const ReferenceVector& z) {
  return finite_oracle_formula(concentration(beta, z),
                               concentration(beta, bhat),
                               concentration(bhat, z));
}

double oracle_rho_heterogeneous(const VectorRef& beta, const VectorRef& bhat,
                                const ReferenceVector& z,
                                const VectorRef& specific_variances) {
  const Vector zv = z.materialize();
  return finite_oracle_formula(
      weighted_concentration(beta, zv, specific_variances),
      weighted_concentration(beta, bhat, specific_variances),
      weighted_concentration(bhat, zv, specific_variances));
}

double asymptotic_oracle_rho(double gamma_beta_z, double psi) {
  if (!(gamma_beta_z >= 0.0 && gamma_beta_z < 1.0)) {
    throw std::invalid_argument(
        "asymptotic_oracle_rho: gamma must lie in [0, 1), got " +
        std::to_string(gamma_beta_z));
  }
  if (!(psi >= 1.0)) {
    throw std::invalid_argument("asymptotic_oracle_rho: psi must be >= 1");
  }
  return gamma_beta_z / (1.0 - gamma_beta_z * gamma_beta_z) * (psi - 1.0 / psi);
}

double estimate_specific_variance(double trace_s, double lambda1,
                                  Index n_assets, Index n_obs) {
  if (n_assets < 1 || n_obs < 1) {
    throw std::invalid_argument("estimate_specific_variance: N and T must be >= 1");
  }
  const double n = static_cast<double>(n_assets);
  const double denom = n - 1.0 - n / static_cast<double>(n_obs);
  if (!(denom > 0.0)) {
    throw std::invalid_argument(
        "estimate_specific_variance: requires N - 1 - N/T > 0, got N=" +
        std::to_string(n_assets) + ", T=" + std::to_string(n_obs));
  }
  return std::max(0.0, (trace_s - lambda1) / denom);
}

double estimate_c1(double lambda1, double delta2_hat, Index n_assets,
                   Index n_obs) {
  const double n = static_cast<double>(n_assets);
  const double denom = static_cast<double>(n_obs) * lambda1 - n * delta2_hat;
  if (!(denom > 0.0)) {
    throw WeakFactorError("estimate_c1: T lambda_1 - N delta^2 = " +
                          std::to_string(denom) + " is not positive");
  }
  return n / denom;
}

RhoSelection select_rho(double x, double psi) {
  if (!(psi >= 1.0) || !std::isfinite(psi)) {
    throw std::invalid_argument("select_rho: psi must be finite and >= 1");
  }
  if (!std::isfinite(x)) {
    throw std::invalid_argument("select_rho: concentration must be finite");
  }
  const double bound = 1.0 - kClampMargin;
  RhoSelection out{0.0, false};
  if (std::abs(x) > bound) {
    x = std::copysign(bound, x);
    out.clamped = true;
  }
  out.rho = x / (1.0 - x * x) * (psi - 1.0 / psi);
  return out;
}

double data_driven_rho(double gamma_bhat_z, double psi_hat) {
  const RhoSelection sel = select_rho(psi_hat * gamma_bhat_z, psi_hat);
  if (sel.clamped) {
    spdlog::warn("data_driven_rho: psi_hat * gamma = {} clamped to {}",
                 psi_hat * gamma_bhat_z, 1.0 - kClampMargin);
  }
  return sel.rho;
}

double compatible_eigenvalue(double sigma2_hat, double gamma_bhat_z,
                             double gamma_corrected_z) {
  if (!(gamma_corrected_z > 0.0)) {
    throw std::invalid_argument(
        "compatible_eigenvalue: corrected concentration must be > 0");
  }
  const double ratio = gamma_bhat_z / gamma_corrected_z;
  return ratio * ratio * sigma2_hat;
}

double error_driver(const VectorRef& beta, const VectorRef& bhat,
                    const ReferenceVector& z) {
  const double g_bhat_z = concentration(bhat, z);
  const double denom = 1.0 - g_bhat_z * g_bhat_z;
  if (!(denom > 0.0)) {
    throw std::invalid_argument("error_driver: gamma_{bhat,z} must be < 1");
  }
  return (concentration(beta, z) - concentration(beta, bhat) * g_bhat_z) /
         denom;
}

ShrinkageParameters estimate_shrinkage_parameters(double trace_s,
                                                  double lambda1,
                                                  Index n_assets, Index n_obs) {
  ShrinkageParameters p{};
  p.delta2_hat = estimate_specific_variance(trace_s, lambda1, n_assets, n_obs);
  p.c1_hat = estimate_c1(lambda1, p.delta2_hat, n_assets, n_obs);
  p.psi_hat = std::sqrt(1.0 + p.delta2_hat * p.c1_hat);
  return p;
}

WhitenedInputs whiten_inputs(const SampleCovariance& cov,
                             const SpectralResult& spectral,
                             const VectorRef& specific_variances) {
  if (specific_variances.size() != cov.n_assets()) {
    throw std::invalid_argument("whiten_inputs: dimension mismatch");
  }
  if (!(specific_variances.minCoeff() > 0.0)) {
    throw std::invalid_argument("whiten_inputs: specific variances must be > 0");
  }
  const Vector inv_sd = specific_variances.cwiseSqrt().cwiseInverse();
  const Vector scaled = spectral.leading_eigenvector.cwiseProduct(inv_sd);
  WhitenedInputs out;
  out.lambda1 = spectral.leading_eigenvalue * scaled.squaredNorm();
  out.exposures = scaled / scaled.norm();
  out.reference = whiten(ReferenceVector(cov.n_assets()).materialize(), inv_sd);
  out.trace = cov.diagonal().cwiseQuotient(specific_variances).sum();
  return out;
}

CorrectedEstimate corrected_estimator(const SampleCovariance& cov,
                                      const SpectralResult& spectral,
                                      const CorrectionMode& mode,
                                      const CorrectionOptions& options) {
  const Index n = cov.n_assets();
  const Index t = cov.n_obs();
  const ReferenceVector z(n);
  EstimatedFactorModel pca = pca_estimate(cov, spectral);
  const Vector& bhat = pca.exposures();

  // Quantities that drive rho, in the chosen coordinates.
  double trace = spectral.trace;
  double lambda1 = spectral.leading_eigenvalue;
  double gamma_work = concentration(bhat, z);
  const bool whitened = options.whitening == Whitening::EstimatedSpecific;
  if (whitened) {
    const WhitenedInputs w = whiten_inputs(cov, spectral, pca.specific_variances());
    trace = w.trace;
    lambda1 = w.lambda1;
    gamma_work = std::clamp(w.exposures.dot(w.reference), -1.0, 1.0);
  }

  CorrectionDiagnostics diag;
  diag.gamma_bhat_z = concentration(bhat, z);
  diag.delta2_hat = estimate_specific_variance(trace, lambda1, n, t);
  bool have_psi = true;
  try {
    diag.c1_hat = estimate_c1(lambda1, diag.delta2_hat, n, t);
    diag.psi_hat = std::sqrt(1.0 + diag.delta2_hat * diag.c1_hat);
  } catch (const WeakFactorError& e) {
    spdlog::debug("corrected_estimator: {}; falling back to rho = 0", e.what());
    diag.c1_hat = std::numeric_limits<double>::quiet_NaN();
    diag.psi_hat = 1.0;
    have_psi = false;
  }

  double rho = 0.0;
  if (const auto* fo = std::get_if<mode::FiniteOracle>(&mode)) {
    rho = oracle_rho(fo->beta, bhat, z);
  } else if (!have_psi) {
    diag.fallback = true;
  } else {
    double x = 0.0;
    if (std::holds_alternative<mode::DataDriven>(mode)) {
      x = diag.psi_hat * gamma_work;
    } else if (const auto* og = std::get_if<mode::OracleGamma>(&mode)) {
      x = og->gamma_beta_z;
    } else {
      const auto& ow = std::get<mode::OracleWhitenedGamma>(mode);
      if (ow.beta.size() != n) {
        throw std::invalid_argument("corrected_estimator: oracle beta has wrong size");
      }
      x = whitened ? weighted_concentration(ow.beta, z.materialize(),
                                            pca.specific_variances())
                   : concentration(ow.beta, z);
    }
    const RhoSelection sel = select_rho(x, diag.psi_hat);
    rho = sel.rho;
    diag.clamped = sel.clamped;
    if (sel.clamped) {
      spdlog::debug("corrected_estimator: concentration {} clamped", x);
    }
  }

  Vector corrected = geodesic_shrink(bhat, z, rho);
  diag.rho = rho;
  diag.gamma_corrected_z = concentration(corrected, z);
  const double sigma2 = compatible_eigenvalue(
      spectral.leading_eigenvalue, diag.gamma_bhat_z, diag.gamma_corrected_z);
  Vector specific = residual_specific_variances(cov, sigma2, corrected);

  CorrectionResult result{corrected, sigma2, specific, diag};
  EstimatedFactorModel model(sigma2, std::move(corrected), std::move(specific));
  return CorrectedEstimate{std::move(result), std::move(model), std::move(pca)};
}

CorrectedEstimate corrected_estimator(const ReturnsPanel& panel,
                                      const CorrectionMode& mode,
                                      const CorrectionOptions& options) {
  const SampleCovariance cov(panel);
  return corrected_estimator(cov, leading_eigenpair(cov), mode, options);
}

}  // namespace dbpca
