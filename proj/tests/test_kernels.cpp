#include <gtest/gtest.h>

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/kernels.h"

namespace spinlab::kernels {
namespace {

std::vector<double> randomBlock(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<double> v(size);
  for (auto& x : v) x = n(rng);
  return v;
}

// Reference matrix assembled element by element from the discretization.
Eigen::MatrixXd denseOperator(const OscillatorStencil& op) {
  const auto n = static_cast<Eigen::Index>(op.n);
  const double h2 = op.spacing * op.spacing;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index r = j * n + i;
      const double x = -op.halfWidth + static_cast<double>(i + 1) * op.spacing;
      const double y = -op.halfWidth + static_cast<double>(j + 1) * op.spacing;
      m(r, r) = 2.0 / h2 + 0.5 * (x * x + y * y);  // m = ω = ħ = 1: kinetic 4·(1/2h²)
      if (i > 0) m(r, r - 1) = -0.5 / h2;
      if (i + 1 < n) m(r, r + 1) = -0.5 / h2;
      if (j > 0) m(r, r - n) = -0.5 / h2;
      if (j + 1 < n) m(r, r + n) = -0.5 / h2;
    }
  return m;
}

TEST(Stencil, Geometry) {
  const auto op = OscillatorStencil::make(7, 4.0, 1, 1, 1);
  EXPECT_DOUBLE_EQ(op.spacing, 1.0);
  EXPECT_DOUBLE_EQ(op.coordinate(0), -3.0);
  EXPECT_DOUBLE_EQ(op.coordinate(6), 3.0);
  EXPECT_DOUBLE_EQ(op.hopping, 0.5);
  EXPECT_THROW(OscillatorStencil::make(0, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(OscillatorStencil::make(8, 1, -1, 1, 1), std::invalid_argument);
}

TEST(Stencil, ApplyMatchesDenseMatrix) {
  const auto op = OscillatorStencil::make(12, 5.0, 1, 1, 1);
  const Eigen::MatrixXd m = denseOperator(op);
  const auto v = randomBlock(op.size(), 1);
  std::vector<double> out(op.size());
  serial::apply(op, v, out);
  const Eigen::VectorXd ref = m * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  for (std::size_t r = 0; r < op.size(); ++r) EXPECT_NEAR(out[r], ref(static_cast<Eigen::Index>(r)), 1e-11);
}

TEST(Stencil, UpperBoundDominatesSpectrum) {
  const auto op = OscillatorStencil::make(10, 3.0, 1, 1, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(denseOperator(op));
  EXPECT_GE(op.upperBound(), es.eigenvalues().maxCoeff());
}

TEST(Backends, BitIdentical) {
  const auto op = OscillatorStencil::make(33, 6.0, 1.3, 0.7, 1.1);
  const std::size_t cols = 5;
  const auto x = randomBlock(op.size() * cols, 2);
  const auto y = randomBlock(op.size() * cols, 3);

  std::vector<double> a(op.size()), b(op.size());
  serial::apply(op, std::span(y).first(op.size()), a);
  omp::apply(op, std::span(y).first(op.size()), b);
  EXPECT_EQ(a, b);

  std::vector<double> za(op.size() * cols), zb(op.size() * cols);
  serial::chebyshevStep(op, x, y, za, cols, 0.3, -1.2, 0.7);
  omp::chebyshevStep(op, x, y, zb, cols, 0.3, -1.2, 0.7);
  EXPECT_EQ(za, zb);

  std::vector<double> ga(cols * cols), gb(cols * cols);
  serial::gram(x, cols, y, cols, op.size(), ga);
  omp::gram(x, cols, y, cols, op.size(), gb);
  EXPECT_EQ(ga, gb);
}

TEST(Backends, ChebyshevStepIsTheAffineCombination) {
  const auto op = OscillatorStencil::make(9, 3.0, 1, 1, 1);
  const auto x = randomBlock(op.size() * 2, 4);
  const auto y = randomBlock(op.size() * 2, 5);
  std::vector<double> z(op.size() * 2), hy(op.size());
  chebyshevStep(Backend::OpenMP, op, x, y, z, 2, 2.0, 3.0, -1.0);
  serial::apply(op, std::span(y).subspan(op.size(), op.size()), hy);
  for (std::size_t r = 0; r < op.size(); ++r)
    EXPECT_NEAR(z[op.size() + r], 2.0 * hy[r] + 3.0 * y[op.size() + r] - x[op.size() + r], 1e-12);
  // gamma = 0 needs no X block.
  EXPECT_NO_THROW(chebyshevStep(Backend::Serial, op, {}, y, z, 2, 1.0, 0.0, 0.0));
}

TEST(Backends, GramMatchesEigen) {
  const std::size_t rows = 50;
  const auto x = randomBlock(rows * 3, 6);
  const auto y = randomBlock(rows * 4, 7);
  std::vector<double> g(12);
  gram(Backend::OpenMP, x, 3, y, 4, rows, g);
  const Eigen::Map<const Eigen::MatrixXd> X(x.data(), rows, 3), Y(y.data(), rows, 4);
  const Eigen::MatrixXd ref = X.transpose() * Y;
  for (Eigen::Index b = 0; b < 4; ++b)
    for (Eigen::Index a = 0; a < 3; ++a) EXPECT_NEAR(g[static_cast<std::size_t>(b * 3 + a)], ref(a, b), 1e-12);
}

TEST(Backends, SizeChecks) {
  const auto op = OscillatorStencil::make(4, 1, 1, 1, 1);
  std::vector<double> small(3), ok(16);
  EXPECT_THROW(serial::apply(op, small, ok), std::invalid_argument);
  EXPECT_THROW(omp::apply(op, ok, small), std::invalid_argument);
  EXPECT_THROW(serial::gram(ok, 2, ok, 2, 16, ok), std::invalid_argument);
  EXPECT_EQ(toString(Backend::Serial), "serial");
  EXPECT_GE(ompThreads(), 1);
}

}  // namespace
}  // namespace spinlab::kernels
