#include <cmath>

#include <gtest/gtest.h>

#include "dbpca/model.h"
#include "test_helpers.h"

namespace dbpca {
namespace {

TEST(ReferenceVector, EntriesAndNorm) {
  const ReferenceVector z(7);
  const Vector m = z.materialize();
  EXPECT_NEAR(m.norm(), 1.0, 1e-12);
  for (Index i = 0; i < 7; ++i) EXPECT_DOUBLE_EQ(m(i), 1.0 / std::sqrt(7.0));
  EXPECT_THROW(ReferenceVector(0), std::invalid_argument);
}

TEST(ReferenceVector, DotMatchesMaterialized) {
  Rng rng(1);
  const ReferenceVector z(30);
  const Vector x = testing::random_unit(30, rng);
  EXPECT_NEAR(z.dot(x), z.materialize().dot(x), 1e-14);
}

TEST(FactorModelSpec, RejectsNonUnitExposures) {
  Matrix b = Matrix::Constant(4, 1, 1.0);
  EXPECT_THROW(FactorModelSpec(b, Vector::Ones(1), Vector::Ones(4)),
               std::invalid_argument);
  b /= 2.0;
  EXPECT_NO_THROW(FactorModelSpec(b, Vector::Ones(1), Vector::Ones(4)));
}

TEST(FactorModelSpec, RejectsNegativeOrNonFiniteVariances) {
  const Matrix b = Matrix::Constant(4, 1, 0.5);
  EXPECT_THROW(FactorModelSpec(b, Vector::Constant(1, -1.0), Vector::Ones(4)),
               std::invalid_argument);
  Vector d = Vector::Ones(4);
  d(2) = std::nan("");
  EXPECT_THROW(FactorModelSpec(b, Vector::Ones(1), d), std::invalid_argument);
  EXPECT_THROW(FactorModelSpec(b, Vector::Ones(2), Vector::Ones(4)),
               std::invalid_argument);
}

TEST(EstimatedFactorModel, RequiresOrientationAndPositiveSpecifics) {
  const Vector b = Vector::Constant(4, 0.5);
  EXPECT_NO_THROW(EstimatedFactorModel(1.0, b, Vector::Ones(4)));
  EXPECT_THROW(EstimatedFactorModel(1.0, -b, Vector::Ones(4)),
               std::invalid_argument);
  EXPECT_THROW(EstimatedFactorModel(1.0, b, Vector::Zero(4)),
               std::invalid_argument);
  EXPECT_THROW(EstimatedFactorModel(-1.0, b, Vector::Ones(4)),
               std::invalid_argument);
}

TEST(ReturnsPanel, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(ReturnsPanel(Matrix(0, 3)), std::invalid_argument);
  Matrix r = Matrix::Ones(3, 2);
  r(1, 1) = INFINITY;
  EXPECT_THROW(ReturnsPanel{r}, std::invalid_argument);
}

TEST(AssembleCovariance, IdentityWhenFactorVarianceZero) {
  const Vector b = Vector::Constant(4, 0.5);
  const CovarianceModel cov =
      assemble_covariance(EstimatedFactorModel(0.0, b, Vector::Ones(4)));
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(cov.quadratic_form(testing::random_unit(4, rng)), 1.0, 1e-14);
  }
}

TEST(AssembleCovariance, RankOnePlusFloor) {
  const double floor = 1e-10;
  Vector e1 = Vector::Zero(3);
  e1(0) = 1.0;
  const Matrix m = assemble_covariance(
                       EstimatedFactorModel(1.0, e1, Vector::Constant(3, floor)))
                       .materialize();
  EXPECT_DOUBLE_EQ(m(0, 0), 1.0 + floor);
  EXPECT_DOUBLE_EQ(m(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(m(1, 2), 0.0);
}

TEST(AssembleCovariance, RejectsZeroSpecificVariance) {
  const Matrix b = Matrix::Constant(4, 1, 0.5);
  const FactorModelSpec spec(b, Vector::Ones(1), Vector::Zero(4));
  EXPECT_THROW(assemble_covariance(spec), std::invalid_argument);
}

TEST(CovarianceModel, StructuredMatchesDense) {
  Rng rng(3);
  for (Index n : {5, 50, 200}) {
    Matrix b(n, 3);
    for (Index k = 0; k < 3; ++k) b.col(k) = testing::random_unit(n, rng);
    const Vector f = Vector::Random(3).cwiseAbs() * n;
    const Vector d = Vector::Random(n).cwiseAbs().array() + 0.1;
    const CovarianceModel s = CovarianceModel::structured(b, f, d);
    const CovarianceModel dense = CovarianceModel::dense(s.materialize());
    for (int i = 0; i < 100; ++i) {
      const Vector w = Vector::Random(n);
      const double qs = s.quadratic_form(w);
      EXPECT_NEAR(qs, dense.quadratic_form(w), 1e-10 * std::abs(qs));
      EXPECT_LE((s.multiply(w) - dense.multiply(w)).norm(),
                1e-10 * dense.multiply(w).norm());
    }
  }
}

TEST(CovarianceModel, DenseRejectsAsymmetric) {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 1) = 0.5;
  EXPECT_THROW(CovarianceModel::dense(m), std::invalid_argument);
  EXPECT_THROW(CovarianceModel::dense(Matrix::Ones(2, 3)), std::invalid_argument);
}

TEST(Concentration, BasicCases) {
  Rng rng(4);
  const Vector x = testing::random_unit(6, rng);
  EXPECT_NEAR(concentration(x, x), 1.0, 1e-15);
  Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
  e1(0) = 1.0;
  e2(1) = 1.0;
  EXPECT_DOUBLE_EQ(concentration(e1, e2), 0.0);
}

TEST(Concentration, HandExample) {
  Vector x(3);
  x << 1.0, 1.0, 0.0;
  x /= std::sqrt(2.0);
  const ReferenceVector z(3);
  EXPECT_NEAR(concentration(x, z), std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(concentration(x, z), 0.81650, 5e-6);
  EXPECT_NEAR(concentration(x, z.materialize()), x.dot(z.materialize()), 1e-15);
}

TEST(Concentration, RejectsNonUnit) {
  EXPECT_THROW(concentration(Vector::Ones(3), Vector::Ones(3) / std::sqrt(3.0)),
               std::invalid_argument);
  EXPECT_THROW(concentration(Vector::Ones(3), ReferenceVector(3)),
               std::invalid_argument);
}

TEST(Concentration, PythagoreanIdentity) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vector x = testing::random_unit(10, rng);
    const Vector y = testing::random_unit(10, rng);
    const double g = concentration(x, y);
    const double sin2 = (x - g * y).squaredNorm();
    EXPECT_NEAR(g * g + sin2, 1.0, 1e-12);
  }
}

TEST(WeightedConcentration, EqualWeightsReduceToPlain) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const Vector x = Vector::Random(8);
    const Vector y = Vector::Random(8);
    const double plain = concentration(x.normalized(), y.normalized());
    EXPECT_NEAR(weighted_concentration(x, y, Vector::Constant(8, 3.7)), plain,
                1e-12);
    EXPECT_NEAR(weighted_concentration(x, y, Vector::Ones(8)), plain, 1e-12);
  }
}

TEST(WeightedConcentration, SelfIsOne) {
  const Vector x = Vector::Random(5);
  Vector w(5);
  w << 1, 2, 3, 4, 5;
  EXPECT_NEAR(weighted_concentration(x, x, w), 1.0, 1e-15);
}

TEST(WeightedConcentration, WhiteningOracle) {
  Vector x(2), y(2), d(2);
  x << 1.0, 0.0;
  y << 1.0, 1.0;
  y /= std::sqrt(2.0);
  d << 1.0, 4.0;
  const Vector xt = (x.array() / d.array().sqrt()).matrix().normalized();
  const Vector yt = (y.array() / d.array().sqrt()).matrix().normalized();
  EXPECT_NEAR(weighted_concentration(x, y, d), xt.dot(yt), 1e-15);
  EXPECT_NEAR(weighted_concentration(x, y, d), 2.0 / std::sqrt(5.0), 1e-15);
}

TEST(WeightedConcentration, RejectsBadWeights) {
  const Vector x = Vector::Ones(2);
  EXPECT_THROW(weighted_concentration(x, x, Vector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(weighted_concentration(x, x, -Vector::Ones(2)), std::invalid_argument);
}

TEST(Orient, FlipsOnlyNegativeProjections) {
  const ReferenceVector z(3);
  Vector x(3);
  x << 0.6, 0.8, 0.0;
  EXPECT_EQ(orient(x, z), x);
  EXPECT_EQ(orient(-x, z), x);
  Vector t(3);
  t << 1.0, -1.0, 0.0;
  t /= std::sqrt(2.0);
  EXPECT_EQ(orient(t, z), t);
  EXPECT_EQ(orient(-t, z), -t);
}

}  // namespace
}  // namespace dbpca
