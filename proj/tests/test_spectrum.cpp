#include <gtest/gtest.h>

#include <sstream>

#include "spinlab/errors.h"
#include "spinlab/spectrum.h"

namespace spinlab {
namespace {

TEST(Analytic, LevelsAndSequence) {
  const auto levels = analyticSpectrum(3);
  ASSERT_EQ(levels.size(), 4U);
  EXPECT_DOUBLE_EQ(levels[0].lambda, 1.0);
  EXPECT_EQ(levels[3].degeneracy, 4U);
  EXPECT_EQ(analyticLambdaSequence(7), (std::vector<double>{1, 2, 2, 3, 3, 3, 4}));
}

TEST(Clustering, GapsAndTolerance) {
  EXPECT_EQ(clusterDegeneracies({1.0, 1.995, 2.0, 2.99, 3.0, 3.001}, 1e-2), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(clusterDegeneracies({1.0, 1.5, 2.0}, 1e-2), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_TRUE(clusterDegeneracies({}, 1e-2).empty());
}

TEST(Freeze, BelowTheFloorOnly) {
  EXPECT_TRUE(freezePredicate(0.5, 1.0, 1.0, 1.0));
  EXPECT_FALSE(freezePredicate(1.0, 1.0, 1.0, 1.0));  // at the floor a state still exists
  EXPECT_FALSE(freezePredicate(2.0, 1.0, 1.0, 1.0));
  EXPECT_TRUE(freezePredicate(1.9, 1.0, 2.0, 1.0));
  EXPECT_THROW(freezePredicate(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Config, Validation) {
  OscillatorConfig c;
  EXPECT_NO_THROW(c.validate());
  c.points = 8;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.mass = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.method = EigenMethod::Dense;
  EXPECT_THROW(c.validate(), std::invalid_argument);  // 128 points is too many for dense
  c = {};
  c.eigCount = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Solver, IterativeAgreesWithDense) {
  OscillatorConfig c;
  c.points = 24;
  c.halfWidth = 7;
  c.eigCount = 6;
  c.method = EigenMethod::Dense;
  const auto dense = numericSpectrum(c);
  c.method = EigenMethod::Iterative;
  const auto iter = numericSpectrum(c);
  EXPECT_EQ(dense.method, "dense");
  EXPECT_EQ(iter.method, "chebyshev-filtered-subspace");
  ASSERT_EQ(iter.lambdas.size(), 6U);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(iter.lambdas[i], dense.lambdas[i], 1e-9);
  for (double r : iter.residuals) EXPECT_LE(r, 1e-9);
}

TEST(Solver, SerialAndOpenMpBackendsAgree) {
  OscillatorConfig c;
  c.points = 48;
  c.eigCount = 3;
  c.backend = kernels::Backend::Serial;
  const auto a = numericSpectrum(c);
  c.backend = kernels::Backend::OpenMP;
  const auto b = numericSpectrum(c);
  EXPECT_EQ(a.lambdas, b.lambdas);
}

TEST(Solver, EnergiesScaleWithHbarOmega) {
  OscillatorConfig c;
  c.points = 64;
  c.omega = 2;
  c.halfWidth = 6;
  c.eigCount = 3;
  const auto r = numericSpectrum(c);
  EXPECT_DOUBLE_EQ(r.hbarOmega, 2.0);
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) EXPECT_DOUBLE_EQ(r.energies[i], 2.0 * r.lambdas[i]);
  EXPECT_NEAR(r.lambdas[0], 1.0, 1e-2);
  EXPECT_EQ(r.degeneracies, (std::vector<std::size_t>{1, 2}));
}

TEST(Solver, SecondOrderGridConvergence) {
  OscillatorConfig c;
  const auto study = groundStateConvergence(c, {32, 64});
  ASSERT_EQ(study.orders.size(), 1U);
  EXPECT_GE(study.orders[0], 1.8);
  EXPECT_LT(study.runs[1].groundError, study.runs[0].groundError);
}

TEST(Solver, Failures) {
  OscillatorConfig c;
  c.points = 32;
  c.halfWidth = 2;  // eigenfunctions still large on the boundary
  EXPECT_THROW(numericSpectrum(c), NumericalError);
  c = {};
  c.points = 64;
  c.method = EigenMethod::Iterative;
  c.maxIterations = 1;
  EXPECT_THROW(numericSpectrum(c), NumericalError);
}

TEST(Output, JsonAndCsv) {
  OscillatorConfig c;
  c.points = 24;
  c.halfWidth = 7;
  c.eigCount = 4;
  const auto r = numericSpectrum(c);
  const auto j = toJson(r);
  EXPECT_EQ(j["lambdas"].size(), 4U);
  EXPECT_EQ(j["degeneracies"], (std::vector<std::size_t>{1, 2, 1}));
  std::ostringstream out;
  writeCsv(r, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "index,lambda,energy,degeneracyCluster");
  EXPECT_NE(out.str().find("\n3,"), std::string::npos);
}

}  // namespace
}  // namespace spinlab
