#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "spinlab/kernels.h"

namespace spinlab {

enum class EigenMethod {
  Auto,       ///< dense for points <= kDenseLimit, Chebyshev-filtered otherwise
  Dense,      ///< assemble the full matrix and diagonalize (small grids only)
  Iterative,  ///< Chebyshev-filtered block subspace iteration with Rayleigh-Ritz
};

inline constexpr std::size_t kDenseLimit = 32;

/// Internal-energy oscillator on a truncated square. κ = mω.
struct OscillatorConfig {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double halfWidth = 8.0;
  std::size_t points = 128;
  std::size_t eigCount = 6;

  double clusterTol = 1e-2;     ///< degeneracy clustering tolerance, units of ħω
  double floorLambda = 1.0;     ///< energy floor constant used by the freeze predicate
  double residualTol = 1e-10;   ///< stop when every ‖Hv − Ev‖ is below this
  double boundaryTol = 1e-6;    ///< max |ψ| on the outer ring relative to max |ψ|
  std::size_t filterDegree = 24;
  std::size_t maxIterations = 400;
  std::uint64_t seed = 20240607;
  EigenMethod method = EigenMethod::Auto;
  kernels::Backend backend = kernels::Backend::OpenMP;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct SpectrumResult {
  std::vector<double> lambdas;          ///< E/(ħω), ascending
  std::vector<double> energies;         ///< λ·ħω
  std::vector<std::size_t> degeneracies;  ///< sizes of consecutive clusters
  std::vector<double> analyticLambdas;  ///< reference sequence of the same length
  std::vector<double> residuals;        ///< ‖Hv − Ev‖/‖v‖ per pair
  double boundaryRatio = 0;             ///< worst boundary amplitude ratio
  std::size_t iterations = 0;
  std::string method;
  double hbarOmega = 1;
};

struct AnalyticLevel {
  double lambda;
  std::size_t degeneracy;
};

/// λ = n + 1 with degeneracy n + 1 for n = 0..nMax.
std::vector<AnalyticLevel> analyticSpectrum(std::size_t nMax);
/// The analytic λ sequence with multiplicity, first `count` entries.
std::vector<double> analyticLambdaSequence(std::size_t count);

/// Throws std::invalid_argument for a bad config, NumericalError on
/// non-convergence or failed boundary-decay validation.
SpectrumResult numericSpectrum(const OscillatorConfig& cfg);

/// Sizes of runs of ascending values whose consecutive gaps are <= tol.
std::vector<std::size_t> clusterDegeneracies(const std::vector<double>& sorted, double tol);

/// True iff internalEnergy < floorLambda·ħω, i.e. no internal state remains.
/// Energies at the floor are not frozen. Throws std::invalid_argument unless
/// floorLambda > 0.
bool freezePredicate(double internalEnergy, double floorLambda, double omega, double hbar);

struct ConvergencePoint {
  std::size_t points;
  double spacing;
  double groundError;  ///< |λ₀ − 1|
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> runs;
  std::vector<double> orders;  ///< observed order between consecutive runs
};

/// Ground-state error for each grid size (other settings from `base`).
ConvergenceStudy groundStateConvergence(const OscillatorConfig& base, const std::vector<std::size_t>& pointsPerAxis);

nlohmann::json toJson(const SpectrumResult& r);
/// index,lambda,energy,degeneracyCluster
void writeCsv(const SpectrumResult& r, std::ostream& out);

}  // namespace spinlab
