#include "spinlab/spectrum.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinlab/errors.h"

namespace spinlab {

namespace {

constexpr std::size_t kDenseHardLimit = 48;

using Block = Eigen::MatrixXd;  // column-major, one eigenvector guess per column

std::span<double> view(Block& b) { return {b.data(), static_cast<std::size_t>(b.size())}; }

struct EigenPairs {
  std::vector<double> values;
  Block vectors;
  std::size_t iterations = 0;
};

EigenPairs denseSolve(const kernels::OscillatorStencil& op, std::size_t k) {
  const std::size_t n = op.n;
  const auto size = static_cast<Eigen::Index>(op.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = static_cast<Eigen::Index>(j * n + i);
      h(idx, idx) = op.diagonal(i, j);
      if (i + 1 < n) h(idx, idx + 1) = h(idx + 1, idx) = -op.hopping;
      if (j + 1 < n) h(idx, idx + static_cast<Eigen::Index>(n)) = h(idx + static_cast<Eigen::Index>(n), idx) = -op.hopping;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  EigenPairs out;
  const auto kk = static_cast<Eigen::Index>(k);
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + kk);
  out.vectors = solver.eigenvectors().leftCols(kk);
  out.iterations = 1;
  return out;
}

void orthonormalize(Block& x) {
  Eigen::HouseholderQR<Block> qr(x);
  x = qr.householderQ() * Block::Identity(x.rows(), x.cols());
}

// Chebyshev-filtered subspace iteration: a degree-m polynomial in H damps the
// interval [cut, upper] and amplifies everything below, then Rayleigh-Ritz on
// the filtered block extracts the lowest pairs. The block is wider than the
// requested count so that degenerate clusters are captured whole.
EigenPairs filteredSubspace(const kernels::OscillatorStencil& op, const OscillatorConfig& cfg) {
  const std::size_t rows = op.size();
  const std::size_t k = cfg.eigCount;
  const std::size_t cols = std::min(rows, std::max(2 * k, k + 6));
  const auto R = static_cast<Eigen::Index>(rows);
  const auto C = static_cast<Eigen::Index>(cols);
  const double upper = op.upperBound();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  Block x(R, C);
  for (Eigen::Index c = 0; c < C; ++c)
    for (Eigen::Index r = 0; r < R; ++r) x(r, c) = normal(rng);
  orthonormalize(x);

  Block hx(R, C), y(R, C), z(R, C);
  Eigen::MatrixXd g(C, C);
  for (std::size_t it = 1; it <= cfg.maxIterations; ++it) {
    // Rayleigh-Ritz on span(X).
    kernels::chebyshevStep(cfg.backend, op, {}, view(x), view(hx), cols, 1.0, 0.0, 0.0);
    kernels::gram(cfg.backend, view(x), cols, view(hx), cols, rows, {g.data(), static_cast<std::size_t>(g.size())});
    const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(sym);
    if (small.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz eigensolver failed");
    x = (x * small.eigenvectors()).eval();
    hx = (hx * small.eigenvectors()).eval();
    const Eigen::VectorXd theta = small.eigenvalues();

    double worst = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const auto cc = static_cast<Eigen::Index>(c);
      worst = std::max(worst, (hx.col(cc) - theta(cc) * x.col(cc)).norm());
    }
    if (worst <= cfg.residualTol) {
      EigenPairs out;
      out.values.assign(theta.data(), theta.data() + k);
      out.vectors = x.leftCols(static_cast<Eigen::Index>(k));
      out.iterations = it;
      return out;
    }

    // Scaled three-term recurrence; a0 is the current lowest Ritz value.
    const double cut = theta(C - 1);
    const double a0 = theta(0);
    if (!(cut < upper) || !std::isfinite(cut)) throw NumericalError("filter bounds collapsed");
    const double e = (upper - cut) / 2;
    const double centre = (upper + cut) / 2;
    double sigma = e / (a0 - centre);
    const double tau = 2 / sigma;
    kernels::chebyshevStep(cfg.backend, op, {}, view(x), view(y), cols, sigma / e, -centre * sigma / e, 0.0);
    for (std::size_t d = 2; d <= cfg.filterDegree; ++d) {
      const double next = 1 / (tau - sigma);
      kernels::chebyshevStep(cfg.backend, op, view(x), view(y), view(z), cols, 2 * next / e, -2 * centre * next / e,
                             -sigma * next);
      std::swap(x, y);
      std::swap(y, z);
      sigma = next;
    }
    x = y;
    orthonormalize(x);
  }
  throw NumericalError("eigensolver did not converge in " + std::to_string(cfg.maxIterations) +
                       " iterations (residual tolerance " + std::to_string(cfg.residualTol) + ")");
}

}  // namespace

void OscillatorConfig::validate() const {
  for (double v : {mass, omega, hbar, halfWidth})
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("mass, omega, hbar and halfWidth must be positive");
  if (points < 16) throw std::invalid_argument("points per axis must be >= 16");
  if (eigCount < 1) throw std::invalid_argument("eigCount must be >= 1");
  if (eigCount * 4 > points * points) throw std::invalid_argument("eigCount too large for the grid");
  if (!(clusterTol >= 0)) throw std::invalid_argument("clusterTol must be >= 0");
  if (!(floorLambda > 0)) throw std::invalid_argument("floorLambda must be > 0");
  if (!(residualTol > 0) || !(boundaryTol > 0)) throw std::invalid_argument("tolerances must be positive");
  if (filterDegree < 2) throw std::invalid_argument("filterDegree must be >= 2");
  if (maxIterations < 1) throw std::invalid_argument("maxIterations must be >= 1");
  if (method == EigenMethod::Dense && points > kDenseHardLimit)
    throw std::invalid_argument("dense method limited to points <= " + std::to_string(kDenseHardLimit));
}

std::vector<AnalyticLevel> analyticSpectrum(std::size_t nMax) {
  std::vector<AnalyticLevel> out;
  for (std::size_t n = 0; n <= nMax; ++n) out.push_back({static_cast<double>(n + 1), n + 1});
  return out;
}

std::vector<double> analyticLambdaSequence(std::size_t count) {
  std::vector<double> out;
  for (std::size_t level = 1; out.size() < count; ++level)
    for (std::size_t d = 0; d < level && out.size() < count; ++d) out.push_back(static_cast<double>(level));
  return out;
}

std::vector<std::size_t> clusterDegeneracies(const std::vector<double>& sorted, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] - sorted[i - 1] > tol)
      out.push_back(1);
    else
      ++out.back();
  }
  return out;
}

bool freezePredicate(double internalEnergy, double floorLambda, double omega, double hbar) {
  if (!(floorLambda > 0)) throw std::invalid_argument("freezePredicate: floorLambda must be > 0");
  return internalEnergy < floorLambda * hbar * omega;
}

SpectrumResult numericSpectrum(const OscillatorConfig& cfg) {
  cfg.validate();
  const auto op = kernels::OscillatorStencil::make(cfg.points, cfg.halfWidth, cfg.mass, cfg.omega, cfg.hbar);
  const bool dense = cfg.method == EigenMethod::Dense || (cfg.method == EigenMethod::Auto && cfg.points <= kDenseLimit);
  EigenPairs pairs = dense ? denseSolve(op, cfg.eigCount) : filteredSubspace(op, cfg);

  SpectrumResult res;
  res.method = dense ? "dense" : "chebyshev-filtered-subspace";
  res.iterations = pairs.iterations;
  res.hbarOmega = cfg.hbar * cfg.omega;

  const std::size_t rows = op.size();
  std::vector<double> hv(rows);
  for (std::size_t c = 0; c < cfg.eigCount; ++c) {
    const auto col = pairs.vectors.col(static_cast<Eigen::Index>(c));
    const std::span<const double> v(col.data(), rows);
    kernels::apply(cfg.backend, op, v, hv);
    double num = 0, den = 0, peak = 0, edge = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = hv[r] - pairs.values[c] * v[r];
      num += d * d;
      den += v[r] * v[r];
      peak = std::max(peak, std::abs(v[r]));
      const std::size_t i = r % op.n;
      const std::size_t j = r / op.n;
      if (i == 0 || j == 0 || i + 1 == op.n || j + 1 == op.n) edge = std::max(edge, std::abs(v[r]));
    }
    res.residuals.push_back(std::sqrt(num / den));
    res.boundaryRatio = std::max(res.boundaryRatio, edge / peak);
    res.lambdas.push_back(pairs.values[c] / res.hbarOmega);
    res.energies.push_back(pairs.values[c]);
  }
  if (res.boundaryRatio >= cfg.boundaryTol)
    throw NumericalError("eigenfunctions do not decay at the boundary (ratio " + std::to_string(res.boundaryRatio) +
                         "); increase halfWidth");
  res.degeneracies = clusterDegeneracies(res.lambdas, cfg.clusterTol);
  res.analyticLambdas = analyticLambdaSequence(cfg.eigCount);
  return res;
}

ConvergenceStudy groundStateConvergence(const OscillatorConfig& base, const std::vector<std::size_t>& pointsPerAxis) {
  ConvergenceStudy study;
  for (std::size_t n : pointsPerAxis) {
    OscillatorConfig cfg = base;
    cfg.points = n;
    cfg.eigCount = 1;
    const auto r = numericSpectrum(cfg);
    study.runs.push_back({n, 2 * cfg.halfWidth / static_cast<double>(n + 1), std::abs(r.lambdas.front() - 1.0)});
  }
  for (std::size_t i = 1; i < study.runs.size(); ++i) {
    const auto& a = study.runs[i - 1];
    const auto& b = study.runs[i];
    study.orders.push_back(std::log(a.groundError / b.groundError) / std::log(a.spacing / b.spacing));
  }
  return study;
}

nlohmann::json toJson(const SpectrumResult& r) {
  return {
      {"method", r.method},
      {"iterations", r.iterations},
      {"hbarOmega", r.hbarOmega},
      {"lambdas", r.lambdas},
      {"energies", r.energies},
      {"degeneracies", r.degeneracies},
      {"analyticLambdas", r.analyticLambdas},
      {"residuals", r.residuals},
      {"boundaryRatio", r.boundaryRatio},
  };
}

void writeCsv(const SpectrumResult& r, std::ostream& out) {
  out << "index,lambda,energy,degeneracyCluster\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(15);
  std::size_t cluster = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
    if (cluster < r.degeneracies.size() && i >= used + r.degeneracies[cluster]) used += r.degeneracies[cluster++];
    out << i << ',' << r.lambdas[i] << ',' << r.energies[i] << ',' << cluster << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace spinlab
