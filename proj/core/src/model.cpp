#include "dbpca/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dbpca {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;

void require_finite_nonnegative(const Vector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i)) || v(i) < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  ": entries must be finite and >= 0, got " +
                                  std::to_string(v(i)) + " at index " +
                                  std::to_string(i));
    }
  }
}

void require_positive(const Vector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i)) || v(i) <= 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  ": entries must be finite and > 0, got " +
                                  std::to_string(v(i)) + " at index " +
                                  std::to_string(i));
    }
  }
}

void require_unit(const VectorRef& x, double tol, const char* what) {
  if (!is_unit(x, tol)) {
    throw std::invalid_argument(std::string(what) +
                                ": expected a unit vector, norm is " +
                                std::to_string(x.norm()));
  }
}

}  // namespace

ReferenceVector::ReferenceVector(Index n_assets) : n_assets_(n_assets) {
  if (n_assets < 1) {
    throw std::invalid_argument("ReferenceVector: n_assets must be >= 1");
  }
  entry_ = 1.0 / std::sqrt(static_cast<double>(n_assets));
}

double ReferenceVector::dot(const VectorRef& x) const {
  if (x.size() != n_assets_) {
    throw std::invalid_argument("ReferenceVector::dot: dimension mismatch");
  }
  return x.sum() * entry_;
}

Vector ReferenceVector::materialize() const {
  return Vector::Constant(n_assets_, entry_);
}

FactorModelSpec::FactorModelSpec(Matrix exposures, Vector factor_variances,
                                 Vector specific_variances)
    : exposures_(std::move(exposures)),
      factor_variances_(std::move(factor_variances)),
      specific_variances_(std::move(specific_variances)) {
  if (exposures_.rows() < 1 || exposures_.cols() < 1) {
    throw std::invalid_argument(
        "FactorModelSpec: need at least one asset and one factor");
  }
  if (factor_variances_.size() != exposures_.cols()) {
    throw std::invalid_argument(
        "FactorModelSpec: factor_variances length must equal n_factors");
  }
  if (specific_variances_.size() != exposures_.rows()) {
    throw std::invalid_argument(
        "FactorModelSpec: specific_variances length must equal n_assets");
  }
  for (Index k = 0; k < exposures_.cols(); ++k) {
    require_unit(exposures_.col(k), kUnitTol, "FactorModelSpec exposures");
  }
  require_finite_nonnegative(factor_variances_, "FactorModelSpec factor_variances");
  require_finite_nonnegative(specific_variances_,
                             "FactorModelSpec specific_variances");
}

EstimatedFactorModel::EstimatedFactorModel(double factor_variance,
                                           Vector exposures,
                                           Vector specific_variances)
    : factor_variance_(factor_variance),
      exposures_(std::move(exposures)),
      specific_variances_(std::move(specific_variances)) {
  if (exposures_.size() < 1) {
    throw std::invalid_argument("EstimatedFactorModel: empty exposures");
  }
  if (specific_variances_.size() != exposures_.size()) {
    throw std::invalid_argument(
        "EstimatedFactorModel: specific_variances length must equal n_assets");
  }
  if (!std::isfinite(factor_variance_) || factor_variance_ < 0.0) {
    throw std::invalid_argument(
        "EstimatedFactorModel: factor variance must be finite and >= 0");
  }
  require_unit(exposures_, kUnitTol, "EstimatedFactorModel exposures");
  if (exposures_.sum() < -kUnitTol) {
    throw std::invalid_argument(
        "EstimatedFactorModel: exposures must be oriented toward z");
  }
  require_positive(specific_variances_, "EstimatedFactorModel specific_variances");
}

ReturnsPanel::ReturnsPanel(Matrix returns) : returns_(std::move(returns)) {
  if (returns_.rows() < 1 || returns_.cols() < 1) {
    throw std::invalid_argument("ReturnsPanel: panel must be non-empty");
  }
  if (!returns_.allFinite()) {
    throw std::invalid_argument("ReturnsPanel: non-finite return");
  }
}

CovarianceModel CovarianceModel::dense(Matrix matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw std::invalid_argument("CovarianceModel::dense: matrix must be square");
  }
  const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw std::invalid_argument("CovarianceModel::dense: matrix not symmetric");
  }
  return CovarianceModel(Dense{std::move(matrix)});
}

CovarianceModel CovarianceModel::structured(Matrix exposures,
                                            Vector factor_variances,
                                            Vector specific_variances) {
  if (factor_variances.size() != exposures.cols() ||
      specific_variances.size() != exposures.rows()) {
    throw std::invalid_argument("CovarianceModel::structured: dimension mismatch");
  }
  require_finite_nonnegative(factor_variances, "CovarianceModel factor_variances");
  require_positive(specific_variances, "CovarianceModel specific_variances");
  return CovarianceModel(Structured{std::move(exposures),
                                    std::move(factor_variances),
                                    std::move(specific_variances)});
}

Index CovarianceModel::n_assets() const {
  if (const auto* s = as_structured()) return s->specific_variances.size();
  return as_dense()->matrix.rows();
}

double CovarianceModel::quadratic_form(const VectorRef& w) const {
  if (w.size() != n_assets()) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  if (const auto* s = as_structured()) {
    const Vector loadings = s->exposures.transpose() * w;
    return loadings.cwiseAbs2().dot(s->factor_variances) +
           w.cwiseAbs2().dot(s->specific_variances);
  }
  return w.dot(as_dense()->matrix * w);
}

Vector CovarianceModel::multiply(const VectorRef& x) const {
  if (x.size() != n_assets()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  if (const auto* s = as_structured()) {
    const Vector loadings =
        s->factor_variances.cwiseProduct(s->exposures.transpose() * x);
    return s->exposures * loadings + s->specific_variances.cwiseProduct(x);
  }
  return as_dense()->matrix * x;
}

Matrix CovarianceModel::materialize() const {
  if (const auto* s = as_structured()) {
    Matrix out = s->exposures * s->factor_variances.asDiagonal() *
                 s->exposures.transpose();
    out.diagonal() += s->specific_variances;
    return out;
  }
  return as_dense()->matrix;
}

CovarianceModel assemble_covariance(const EstimatedFactorModel& model) {
  return CovarianceModel::structured(
      model.exposures(), Vector::Constant(1, model.factor_variance()),
      model.specific_variances());
}

CovarianceModel assemble_covariance(const FactorModelSpec& model) {
  return CovarianceModel::structured(model.exposures(), model.factor_variances(),
                                     model.specific_variances());
}

bool is_unit(const VectorRef& x, double tol) {
  return std::abs(x.norm() - 1.0) <= tol;
}

double concentration(const VectorRef& x, const VectorRef& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("concentration: dimension mismatch");
  }
  require_unit(x, 1e-9, "concentration x");
  require_unit(y, 1e-9, "concentration y");
  return std::clamp(x.dot(y), -1.0, 1.0);
}

double concentration(const VectorRef& x, const ReferenceVector& z) {
  require_unit(x, 1e-9, "concentration x");
  return std::clamp(z.dot(x), -1.0, 1.0);
}

double weighted_concentration(const VectorRef& x, const VectorRef& y,
                              const VectorRef& weights) {
  if (x.size() != y.size() || x.size() != weights.size()) {
    throw std::invalid_argument("weighted_concentration: dimension mismatch");
  }
  require_positive(weights, "weighted_concentration weights");
  const Vector inv = weights.cwiseInverse();
  const double xy = x.dot(inv.cwiseProduct(y));
  const double xx = x.dot(inv.cwiseProduct(x));
  const double yy = y.dot(inv.cwiseProduct(y));
  if (xx <= 0.0 || yy <= 0.0) {
    throw std::invalid_argument("weighted_concentration: zero vector");
  }
  return std::clamp(xy / std::sqrt(xx * yy), -1.0, 1.0);
}

Vector orient(const VectorRef& x, const ReferenceVector& z) {
  if (z.dot(x) < 0.0) return -x;
  return x;
}

}  // namespace dbpca
