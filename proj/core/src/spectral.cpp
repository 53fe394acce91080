#include "dbpca/spectral.h"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <string>

#include "dbpca/errors.h"

namespace dbpca {

namespace {

constexpr double kResidualTol = 1e-10;

struct TopPair {
  double value;
  Vector vector;
};

TopPair top_eigenpair(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("leading_eigenpair: eigen-solver failed");
  }
  const Index last = symmetric.rows() - 1;
  TopPair top{solver.eigenvalues()(last), solver.eigenvectors().col(last)};
  if (!(top.value > 0.0)) {
    throw DegeneratePanelError(
        "leading_eigenpair: leading eigenvalue is numerically zero");
  }
  const double residual =
      (symmetric * top.vector - top.value * top.vector).norm() / top.value;
  if (residual > kResidualTol) {
    throw std::runtime_error("leading_eigenpair: residual " +
                             std::to_string(residual) + " exceeds tolerance");
  }
  return top;
}

}  // namespace

SampleCovariance::SampleCovariance(const ReturnsPanel& panel) : panel_(panel) {
  const double t = static_cast<double>(panel.n_obs());
  diagonal_ = panel.returns().rowwise().squaredNorm() / t;
  trace_ = diagonal_.sum();
}

Vector SampleCovariance::apply(const VectorRef& x) const {
  if (x.size() != n_assets()) {
    throw std::invalid_argument("SampleCovariance::apply: dimension mismatch");
  }
  const Matrix& r = panel_.returns();
  return r * (r.transpose() * x) / static_cast<double>(n_obs());
}

Matrix SampleCovariance::materialize() const {
  const Matrix& r = panel_.returns();
  return r * r.transpose() / static_cast<double>(n_obs());
}

SpectralResult leading_eigenpair(const SampleCovariance& cov) {
  if (!(cov.trace() > 0.0)) {
    throw DegeneratePanelError("leading_eigenpair: panel is identically zero");
  }
  const Matrix& r = cov.panel().returns();
  const double t = static_cast<double>(cov.n_obs());
  const ReferenceVector z(cov.n_assets());

  Vector u;
  double lambda;
  if (cov.n_obs() < cov.n_assets()) {
    const Matrix gram = r.transpose() * r / t;
    TopPair top = top_eigenpair(gram);
    lambda = top.value;
    u = r * top.vector;
    const double norm = u.norm();
    if (!(norm > 0.0)) {
      throw DegeneratePanelError("leading_eigenpair: zero principal direction");
    }
    u /= norm;
  } else {
    TopPair top = top_eigenpair(cov.materialize());
    lambda = top.value;
    u = top.vector / top.vector.norm();
  }
  return SpectralResult{lambda, orient(u, z), cov.trace()};
}

SpectralResult leading_eigenpair(const ReturnsPanel& panel) {
  return leading_eigenpair(SampleCovariance(panel));
}

double specific_variance_floor(const SampleCovariance& cov) {
  return 1e-10 * cov.trace() / static_cast<double>(cov.n_assets());
}

Vector residual_specific_variances(const SampleCovariance& cov, double sigma2,
                                   const VectorRef& exposures) {
  if (exposures.size() != cov.n_assets()) {
    throw std::invalid_argument(
        "residual_specific_variances: dimension mismatch");
  }
  double floor = specific_variance_floor(cov);
  if (!(floor > 0.0)) floor = 1e-300;
  return (cov.diagonal() - sigma2 * exposures.cwiseAbs2())
      .cwiseMax(floor);
}

EstimatedFactorModel pca_estimate(const SampleCovariance& cov,
                                  const SpectralResult& spectral) {
  return EstimatedFactorModel(
      spectral.leading_eigenvalue, spectral.leading_eigenvector,
      residual_specific_variances(cov, spectral.leading_eigenvalue,
                                  spectral.leading_eigenvector));
}

EstimatedFactorModel pca_estimate(const ReturnsPanel& panel) {
  const SampleCovariance cov(panel);
  return pca_estimate(cov, leading_eigenpair(cov));
}

}  // namespace dbpca
