#include <cmath>

#include <gtest/gtest.h>

#include "dbpca/asymptotics.h"
#include "dbpca/stats.h"

namespace dbpca {
namespace {

TEST(ConvergenceStatistic, NamesRoundTrip) {
  for (ConvergenceStatistic s :
       {ConvergenceStatistic::CosAngleToBeta, ConvergenceStatistic::EigenvalueRatio,
        ConvergenceStatistic::BiasRatio, ConvergenceStatistic::SphereDot,
        ConvergenceStatistic::AngleImprovement, ConvergenceStatistic::EqualWeightRatio}) {
    EXPECT_EQ(parse_statistic(to_string(s)), s);
  }
  EXPECT_EQ(to_string(ConvergenceStatistic::BiasRatio), "bias_ratio");
  EXPECT_THROW(parse_statistic("bias"), std::invalid_argument);
}

TEST(ConvergenceTarget, Values) {
  ConvergenceConfig cfg;
  const double xi = chi_squared_median(250.0) / 250.0;
  EXPECT_NEAR(xi_median(250), xi, 1e-15);
  EXPECT_NEAR(xi, std::pow(1.0 - 2.0 / (9.0 * 250.0), 3), 1e-5);
  const double psi_med = std::sqrt(1.0 + cfg.delta2 * cfg.c1() / xi);
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::BiasRatio, 100, cfg), psi_med, 1e-14);
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::CosAngleToBeta, 100, cfg),
              1.0 / psi_med, 1e-14);
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::EigenvalueRatio, 100, cfg),
              xi + 0.5625, 1e-14);
  const double g2 = 0.81;
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::AngleImprovement, 100, cfg),
              (1.0 - g2) / (1.0 - g2 / (psi_med * psi_med)), 1e-14);
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::SphereDot, 3, cfg), 0.5, 1e-12);
  EXPECT_NEAR(convergence_target(ConvergenceStatistic::EqualWeightRatio, 100, cfg), xi,
              1e-15);
}

TEST(RunConvergenceStudy, RejectsBadInputs) {
  const ConvergenceConfig cfg;
  EXPECT_THROW(run_convergence_study(ConvergenceStatistic::SphereDot, {10, 20}, 5, cfg, 1),
               std::invalid_argument);
  EXPECT_THROW(run_convergence_study(ConvergenceStatistic::SphereDot, {20, 10}, 20, cfg, 1),
               std::invalid_argument);
  EXPECT_THROW(run_convergence_study(ConvergenceStatistic::SphereDot, {}, 20, cfg, 1),
               std::invalid_argument);
  ConvergenceConfig bad;
  bad.psi = 0.9;
  EXPECT_THROW(run_convergence_study(ConvergenceStatistic::BiasRatio, {100}, 20, bad, 1),
               std::invalid_argument);
}

TEST(RunConvergenceStudy, ReproducibleAndBandsContainMedian) {
  ConvergenceConfig cfg;
  const auto a = run_convergence_study(ConvergenceStatistic::BiasRatio, {200, 400}, 20, cfg, 9);
  cfg.threads = 3;
  const auto b = run_convergence_study(ConvergenceStatistic::BiasRatio, {200, 400}, 20, cfg, 9);
  ASSERT_EQ(a.points.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.points[i].median, b.points[i].median);
    EXPECT_EQ(a.points[i].lower, b.points[i].lower);
    EXPECT_EQ(a.points[i].upper, b.points[i].upper);
    EXPECT_LE(a.points[i].lower, a.points[i].median);
    EXPECT_GE(a.points[i].upper, a.points[i].median);
  }
  EXPECT_EQ(a.statistic_name, "bias_ratio");
}

TEST(ConvergenceReport, MonotoneApproachAllowsOneInversion) {
  ConvergenceReport r;
  for (double dev : {0.1, 0.05, 0.06, 0.02}) {
    r.points.push_back(ConvergencePoint{100, 1.0, 0.9, 1.1, 1.0, dev, true, 0.0});
  }
  EXPECT_TRUE(r.monotone_approach(1));
  EXPECT_FALSE(r.monotone_approach(0));
  r.points[3].relative_deviation = 0.07;
  EXPECT_FALSE(r.monotone_approach(1));
}

TEST(SphereDot, DecaysAtInverseSquareRootRate) {
  const ConvergenceConfig cfg;
  const auto report =
      run_convergence_study(ConvergenceStatistic::SphereDot, {100, 1000, 10000}, 2000, cfg, 3);
  for (const ConvergencePoint& p : report.points) {
    EXPECT_NEAR(p.median / p.target, 1.0, 0.05) << p.n;
    EXPECT_LE(p.median, 0.9 / std::sqrt(static_cast<double>(p.n))) << p.n;
    EXPECT_GE(p.auxiliary, 0.99) << p.n;
  }
}

// Cheap versions of the convergence checks; the acceptance suite runs the
// full grids.
TEST(BiasRatio, PcaUnderstatesConcentration) {
  const ConvergenceConfig cfg;
  const auto report =
      run_convergence_study(ConvergenceStatistic::BiasRatio, {500, 2000}, 40, cfg, 5);
  EXPECT_GE(report.points[1].auxiliary, 0.95);
  EXPECT_LT(report.points[1].relative_deviation, report.points[0].relative_deviation);
  EXPECT_LT(report.points[1].relative_deviation, 0.04);
}

TEST(CosAngleToBeta, ApproachesInversePsi) {
  const ConvergenceConfig cfg;
  const std::vector<double> samples =
      convergence_samples(ConvergenceStatistic::CosAngleToBeta, 2000, 40, cfg, 6);
  ASSERT_EQ(samples.size(), 40u);
  EXPECT_NEAR(median(samples) /
                  convergence_target(ConvergenceStatistic::CosAngleToBeta, 2000, cfg),
              1.0, 0.03);
}

TEST(AngleImprovement, MatchesLimit) {
  const ConvergenceConfig cfg;
  const std::vector<double> samples =
      convergence_samples(ConvergenceStatistic::AngleImprovement, 2000, 30, cfg, 7);
  EXPECT_NEAR(median(samples) /
                  convergence_target(ConvergenceStatistic::AngleImprovement, 2000, cfg),
              1.0, 0.05);
}

}  // namespace
}  // namespace dbpca
