#pragma once

// Core domain types for one-factor-dominated return models: the reference
// (dispersionless) vector, ground-truth and estimated factor models, the
// covariance representation shared by estimators and portfolio code, and the
// unit-sphere geometry primitives (concentrations, orientation).

#include <variant>

#include <Eigen/Core>

namespace dbpca {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Vector>;

/// The dispersionless unit vector z = 1_N / sqrt(N). Never materialized
/// unless asked for; inner products against it are sums.
class ReferenceVector {
 public:
  explicit ReferenceVector(Index n_assets);

  Index size() const { return n_assets_; }
  double entry() const { return entry_; }

  /// z^T x
  double dot(const VectorRef& x) const;
  Vector materialize() const;

 private:
  Index n_assets_;
  double entry_;
};

/// Ground-truth K-factor model. Exposure columns are unit-norm; factor and
/// specific variances are per-period (return^2 / period).
///
/// Zero variances are accepted here so that degenerate generators (no style
/// factors, noiseless panels) stay expressible; assemble_covariance() is where
/// strictly positive specific variances are required.
class FactorModelSpec {
 public:
  FactorModelSpec(Matrix exposures, Vector factor_variances,
                  Vector specific_variances);

  Index n_assets() const { return exposures_.rows(); }
  Index n_factors() const { return exposures_.cols(); }

  const Matrix& exposures() const { return exposures_; }
  const Vector& factor_variances() const { return factor_variances_; }
  const Vector& specific_variances() const { return specific_variances_; }

  /// First exposure column (the market factor beta).
  Vector market_exposures() const { return exposures_.col(0); }

 private:
  Matrix exposures_;
  Vector factor_variances_;
  Vector specific_variances_;
};

/// One-factor estimate sigma_hat^2 * b b^T + diag(d). The exposure vector is
/// unit-norm and oriented so that b^T z >= 0.
class EstimatedFactorModel {
 public:
  EstimatedFactorModel(double factor_variance, Vector exposures,
                       Vector specific_variances);

  Index n_assets() const { return exposures_.size(); }
  double factor_variance() const { return factor_variance_; }
  const Vector& exposures() const { return exposures_; }
  const Vector& specific_variances() const { return specific_variances_; }

 private:
  double factor_variance_;
  Vector exposures_;
  Vector specific_variances_;
};

/// N x T panel of excess returns; column t is the cross-section R_t.
class ReturnsPanel {
 public:
  explicit ReturnsPanel(Matrix returns);

  Index n_assets() const { return returns_.rows(); }
  Index n_obs() const { return returns_.cols(); }
  const Matrix& returns() const { return returns_; }

 private:
  Matrix returns_;
};

/// Covariance matrix in either dense form or the factor form
/// B diag(f) B^T + diag(d). Quadratic forms against the factor form cost
/// O(N K) and never build an N x N matrix.
class CovarianceModel {
 public:
  struct Dense {
    Matrix matrix;
  };
  struct Structured {
    Matrix exposures;
    Vector factor_variances;
    Vector specific_variances;
  };

  static CovarianceModel dense(Matrix matrix);
  static CovarianceModel structured(Matrix exposures, Vector factor_variances,
                                    Vector specific_variances);

  Index n_assets() const;
  bool is_structured() const {
    return std::holds_alternative<Structured>(repr_);
  }
  const Structured* as_structured() const {
    return std::get_if<Structured>(&repr_);
  }
  const Dense* as_dense() const { return std::get_if<Dense>(&repr_); }

  /// w^T Sigma w
  double quadratic_form(const VectorRef& w) const;
  /// Sigma x
  Vector multiply(const VectorRef& x) const;
  Matrix materialize() const;

 private:
  explicit CovarianceModel(std::variant<Dense, Structured> repr)
      : repr_(std::move(repr)) {}

  std::variant<Dense, Structured> repr_;
};

CovarianceModel assemble_covariance(const EstimatedFactorModel& model);
CovarianceModel assemble_covariance(const FactorModelSpec& model);

/// gamma_{x,y} = x^T y for unit vectors; the cosine of their angle.
double concentration(const VectorRef& x, const VectorRef& y);
double concentration(const VectorRef& x, const ReferenceVector& z);

/// Cosine of the angle between x and y under the inner product weighted by
/// diag(weights)^{-1}. Weights are specific variances and must be positive.
double weighted_concentration(const VectorRef& x, const VectorRef& y,
                              const VectorRef& weights);

/// Flip x so that x^T z >= 0. A zero projection keeps the input sign.
Vector orient(const VectorRef& x, const ReferenceVector& z);

/// True when |‖x‖ - 1| <= tol.
bool is_unit(const VectorRef& x, double tol = 1e-10);

}  // namespace dbpca
