#include <cmath>

#include <gtest/gtest.h>

#include "dbpca/correction.h"
#include "dbpca/identities.h"
#include "dbpca/metrics.h"
#include "dbpca/spectral.h"
#include "dbpca/stats.h"
#include "test_helpers.h"

namespace dbpca {
namespace {

using testing::HomogeneousVectors;

TEST(TrackingError, ZeroForIdenticalWeights) {
  const PortfolioWeights w = equal_weight(5);
  EXPECT_EQ(tracking_error(w, w, CovarianceModel::dense(Matrix::Identity(5, 5))), 0.0);
}

TEST(TrackingError, EuclideanCase) {
  const double eps = 0.03;
  Vector a = Vector::Constant(4, 0.25);
  Vector b = a;
  b(0) += eps;
  b(1) -= eps;
  EXPECT_NEAR(tracking_error(PortfolioWeights(b), PortfolioWeights(a),
                             CovarianceModel::dense(Matrix::Identity(4, 4))),
              eps * std::sqrt(2.0), 1e-15);
}

TEST(TrackingError, DimensionMismatch) {
  EXPECT_THROW(tracking_error(equal_weight(3), equal_weight(4),
                              CovarianceModel::dense(Matrix::Identity(3, 3))),
               std::invalid_argument);
}

HomogeneousVectors draw(Index n, Rng& rng) {
  const double nd = static_cast<double>(n);
  return HomogeneousVectors{0.3 * nd, 0.8, 0.45 * nd, 1.1,
                            build_market_beta(n, 0.85, rng),
                            build_market_beta(n, 0.6, rng)};
}

TEST(TrackingError, MatchesExactExpansion) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const HomogeneousVectors h = draw(30 + 10 * i, rng);
    const double te = tracking_error(PortfolioWeights(h.w_hat()), PortfolioWeights(h.w()),
                                     h.truth());
    const double exact = identities::exact_portfolio_values(h.setting()).te_squared;
    EXPECT_NEAR(te * te, exact, 1e-10 * exact);
  }
}

TEST(ForecastRatio, Scaling) {
  CalibrationConfig cfg;
  cfg.n_assets = 40;
  Rng rng(2);
  const FactorModelSpec model = build_model(cfg, rng);
  const CovarianceModel sigma = assemble_covariance(model);
  const CovarianceModel twice = CovarianceModel::structured(
      model.exposures(), 2.0 * model.factor_variances(), 2.0 * model.specific_variances());
  const PortfolioWeights w = equal_weight(40);
  EXPECT_NEAR(forecast_ratio(w, sigma, sigma), 1.0, 1e-15);
  EXPECT_NEAR(forecast_ratio(w, twice, sigma), 2.0, 1e-14);
}

TEST(ForecastRatio, MatchesExactExpansion) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const HomogeneousVectors h = draw(30 + 10 * i, rng);
    const double r = forecast_ratio(PortfolioWeights(h.w_hat()), h.estimate(), h.truth());
    const double exact = identities::exact_portfolio_values(h.setting()).forecast_ratio;
    EXPECT_NEAR(r, exact, 1e-10 * exact);
  }
}

TEST(ForecastRatio, RejectsZeroTrueVariance) {
  Vector w(2);
  w << 0.5, 0.5;
  EXPECT_THROW(forecast_ratio(PortfolioWeights(w), CovarianceModel::dense(Matrix::Identity(2, 2)),
                              CovarianceModel::dense(Matrix::Zero(2, 2))),
               std::invalid_argument);
}

TEST(AnnualizeVol, Values) {
  EXPECT_NEAR(annualize_vol(0.01, 252.0), 0.01 * std::sqrt(252.0), 1e-16);
  EXPECT_NEAR(annualize_vol(0.01, 252.0), 0.158745, 5e-7);
  EXPECT_EQ(annualize_vol(0.0, 252.0), 0.0);
  EXPECT_EQ(annualize_vol(0.37, 1.0), 0.37);
  EXPECT_THROW(annualize_vol(-0.1, 252.0), std::invalid_argument);
}

struct DirectMetrics {
  double te_squared;
  double ratio;
};

DirectMetrics direct_metrics(const HomogeneousVectors& h) {
  const Vector wh = min_var_closed_form(h.sigma2_hat, h.bhat,
                                        Vector::Constant(h.n(), h.delta2_hat))
                        .weights();
  const Vector diff = wh - h.w();
  return {h.truth().quadratic_form(diff),
          h.estimate().quadratic_form(wh) / h.truth().quadratic_form(wh)};
}

HomogeneousVectors case_vectors(Index n, double g, double gh, double c, Rng& rng) {
  const double nd = static_cast<double>(n);
  const ReferenceVector z(n);
  HomogeneousVectors h{0.4 * nd, 1.0, 0.6 * nd, 1.3, Vector(), Vector()};
  if (g < 1.0 && gh < 1.0) {
    const testing::Pair p = testing::vectors_with_concentrations(n, g, gh, c, rng);
    h.beta = p.beta;
    h.bhat = p.bhat;
  } else {
    h.beta = g < 1.0 ? build_market_beta(n, g, rng) : z.materialize();
    h.bhat = gh < 1.0 ? build_market_beta(n, gh, rng) : z.materialize();
  }
  return h;
}

TEST(AsymptoticPredictions, CaseFourBothAtZ) {
  Rng rng(4);
  const HomogeneousVectors h = case_vectors(1000, 1.0, 1.0, 0.0, rng);
  const AsymptoticPrediction p = asymptotic_predictions(AsymptoticCase::BothAtZ, h.setting());
  EXPECT_EQ(p.te_squared, 0.0);
  EXPECT_DOUBLE_EQ(p.forecast_ratio, h.sigma2_hat / h.sigma2);
  const DirectMetrics d = direct_metrics(h);
  EXPECT_NEAR(d.te_squared, 0.0, 1e-20);
  EXPECT_NEAR(d.ratio / p.forecast_ratio, 1.0, 0.01);
}

TEST(AsymptoticPredictions, CaseOneOnTruthSetGivesSpecificRatio) {
  Rng rng(5);
  const Index n = 5000;
  HomogeneousVectors h = case_vectors(n, 0.9, 0.7, 0.5, rng);
  const ReferenceVector z(n);
  h.bhat = geodesic_shrink(h.bhat, z, oracle_rho(h.beta, h.bhat, z));
  const AsymptoticPrediction p =
      asymptotic_predictions(AsymptoticCase::BothBelowOne, h.setting());
  EXPECT_NEAR(p.forecast_ratio, h.delta2_hat / h.delta2, 1e-10);
}

TEST(AsymptoticPredictions, GenericCaseMatchesDirectAtModerateN) {
  Rng rng(6);
  const HomogeneousVectors h = case_vectors(5000, 0.9, 0.75, 0.6, rng);
  const AsymptoticPrediction p =
      asymptotic_predictions(AsymptoticCase::BothBelowOne, h.setting());
  const DirectMetrics d = direct_metrics(h);
  EXPECT_NEAR(p.te_squared / d.te_squared, 1.0, 0.10);
  EXPECT_NEAR(p.forecast_ratio / d.ratio, 1.0, 0.10);
}

TEST(AsymptoticPredictions, BoundaryCasesMatchDirectAtLargeN) {
  Rng rng(7);
  const Index n = 100000;
  {
    const HomogeneousVectors h = case_vectors(n, 0.8, 1.0, 0.0, rng);
    const AsymptoticPrediction p =
        asymptotic_predictions(AsymptoticCase::EstimateAtZ, h.setting());
    const DirectMetrics d = direct_metrics(h);
    EXPECT_NEAR(p.te_squared / d.te_squared, 1.0, 0.05);
    EXPECT_NEAR(p.forecast_ratio / d.ratio, 1.0, 0.05);
  }
  {
    const HomogeneousVectors h = case_vectors(n, 1.0, 0.8, 0.0, rng);
    const AsymptoticPrediction p =
        asymptotic_predictions(AsymptoticCase::TruthAtZ, h.setting());
    const DirectMetrics d = direct_metrics(h);
    EXPECT_NEAR(p.te_squared / d.te_squared, 1.0, 0.05);
    EXPECT_NEAR(p.forecast_ratio / d.ratio, 1.0, 0.05);
  }
}

TEST(AsymptoticPredictions, RejectsMismatchedCase) {
  Rng rng(8);
  const HomogeneousSetting inner = case_vectors(100, 0.8, 0.6, 0.3, rng).setting();
  EXPECT_THROW(asymptotic_predictions(AsymptoticCase::EstimateAtZ, inner),
               std::invalid_argument);
  EXPECT_THROW(asymptotic_predictions(AsymptoticCase::TruthAtZ, inner),
               std::invalid_argument);
  EXPECT_THROW(asymptotic_predictions(AsymptoticCase::BothAtZ, inner),
               std::invalid_argument);
  const HomogeneousSetting at_z = case_vectors(100, 1.0, 1.0, 0.0, rng).setting();
  EXPECT_THROW(asymptotic_predictions(AsymptoticCase::BothBelowOne, at_z),
               std::invalid_argument);
  HomogeneousSetting bad = inner;
  bad.delta2 = 0.0;
  EXPECT_THROW(asymptotic_predictions(AsymptoticCase::BothBelowOne, bad),
               std::invalid_argument);
}

TEST(PcaErrorPrediction, Values) {
  EXPECT_DOUBLE_EQ(pca_error_prediction(0.9, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(pca_error_prediction(0.0, 1.25), 0.0);
  EXPECT_NEAR(pca_error_prediction(0.9, 1.25), 0.324 / 0.4816, 1e-14);
  EXPECT_NEAR(pca_error_prediction(0.9, 1.25), 0.67276, 5e-6);
  EXPECT_THROW(pca_error_prediction(1.0, 1.25), std::invalid_argument);
  EXPECT_THROW(pca_error_prediction(0.5, 0.8), std::invalid_argument);
}

// One-factor homogeneous panel with sqrt(1 + delta2 c1) = psi.
struct OneFactorTrial {
  Vector beta;
  double sigma2;
  FactorModelSpec model;
  ReturnsPanel panel;
};

OneFactorTrial one_factor_trial(Index n, Index t, double psi, std::uint64_t seed) {
  Rng rng(seed);
  const double sigma2 = static_cast<double>(n) / (t * (psi * psi - 1.0));
  Vector beta = build_market_beta(n, 0.9, rng);
  FactorModelSpec model = testing::one_factor(beta, sigma2, 1.0);
  ReturnsPanel panel = simulate_returns(model, t, rng);
  return {std::move(beta), sigma2, std::move(model), std::move(panel)};
}

TEST(PcaErrorPrediction, RealizedErrorDriverAtLargeN) {
  std::vector<double> realized;
  for (int trial = 0; trial < 40; ++trial) {
    const OneFactorTrial tr = one_factor_trial(3000, 250, 1.25, derive_seed(3000, 7, trial));
    const SpectralResult spec = leading_eigenpair(tr.panel);
    realized.push_back(error_driver(tr.beta, spec.leading_eigenvector, ReferenceVector(3000)));
  }
  EXPECT_NEAR(median(realized) / pca_error_prediction(0.9, 1.25), 1.0, 0.10);
}

TEST(SimplePortfolioRatio, TrivialAndErrors) {
  Rng rng(9);
  const Vector beta = build_market_beta(20, 0.7, rng);
  const Vector w = equal_weight(20).weights();
  EXPECT_DOUBLE_EQ(simple_portfolio_ratio_prediction(w, beta, beta, 3.0, 3.0), 1.0);
  const Vector orth = build_market_beta(20, 0.0, rng);
  EXPECT_THROW(simple_portfolio_ratio_prediction(w, orth, beta, 1.0, 1.0),
               std::invalid_argument);
}

TEST(SimplePortfolioRatio, EqualWeightPredictionTracksRealizedRatio) {
  const Index n = 2000;
  std::vector<double> predicted, realized, pca_predicted, pca_inverted;
  const Vector w = equal_weight(n).weights();
  for (int trial = 0; trial < 100; ++trial) {
    const OneFactorTrial tr = one_factor_trial(n, 250, 1.25, derive_seed(2000, 9, trial));
    const CorrectedEstimate est = corrected_estimator(tr.panel, mode::DataDriven{});
    const double s2 = est.model.factor_variance();
    const Vector& b = est.model.exposures();
    predicted.push_back(simple_portfolio_ratio_prediction(w, tr.beta, b, tr.sigma2, s2));
    realized.push_back(forecast_ratio(equal_weight(n), assemble_covariance(est.model),
                                      assemble_covariance(tr.model)));
    // With the raw PCA eigenpair the other orientation of C overshoots by
    // roughly psi^4.
    const double l1 = est.pca.factor_variance();
    const Vector& u = est.pca.exposures();
    pca_predicted.push_back(simple_portfolio_ratio_prediction(w, tr.beta, u, tr.sigma2, l1));
    pca_inverted.push_back(l1 / tr.sigma2 * std::pow(w.dot(tr.beta) / w.dot(u), 2));
  }
  EXPECT_NEAR(median(predicted) / median(realized), 1.0, 0.10);
  EXPECT_NEAR(median(predicted), 1.0, 0.05);
  EXPECT_NEAR(median(pca_predicted), 1.0, 0.05);
  EXPECT_NEAR(median(pca_inverted) / std::pow(1.25, 4), 1.0, 0.15);
}

}  // namespace
}  // namespace dbpca
