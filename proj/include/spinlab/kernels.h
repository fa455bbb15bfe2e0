#pragma once

// Data-parallel kernels for the oscillator eigensolver. Every kernel has a
// serial reference and an OpenMP version with the same per-element arithmetic,
// so both produce bit-identical results; the serial one is kept for tests and
// the benchmark.
//
// Blocks of vectors are column-major: column c occupies [c*rows, (c+1)*rows).

#include <cstddef>
#include <span>
#include <string>

namespace spinlab::kernels {

/// −(ħ²/2m)∇² + ½mω²(x² + y²) on the n×n interior points of [−L, L]², spacing
/// h = 2L/(n+1), five-point Laplacian, homogeneous Dirichlet boundary.
/// Grid point (i, j) (i along x) has flat index j·n + i.
struct OscillatorStencil {
  std::size_t n = 0;
  double halfWidth = 0;
  double spacing = 0;
  double hopping = 0;          ///< ħ²/(2m h²)
  double potentialScale = 0;   ///< ½ m ω²

  static OscillatorStencil make(std::size_t n, double halfWidth, double mass, double omega, double hbar);

  std::size_t size() const { return n * n; }
  double coordinate(std::size_t i) const { return -halfWidth + static_cast<double>(i + 1) * spacing; }
  double diagonal(std::size_t i, std::size_t j) const;
  /// Gershgorin upper bound of the spectrum.
  double upperBound() const;
};

enum class Backend { Serial, OpenMP };

std::string toString(Backend b);
/// Threads the OpenMP backend will use.
int ompThreads();

namespace serial {
void apply(const OscillatorStencil& op, std::span<const double> in, std::span<double> out);
/// Z = alpha·(H Y) + beta·Y + gamma·X for `cols` columns. X may be empty when gamma == 0.
void chebyshevStep(const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma);
/// G(i, j) = X_iᵀ Y_j, G column-major xcols × ycols.
void gram(std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g);
}  // namespace serial

namespace omp {
void apply(const OscillatorStencil& op, std::span<const double> in, std::span<double> out);
void chebyshevStep(const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma);
void gram(std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g);
}  // namespace omp

/// Backend-dispatching front ends.
void apply(Backend b, const OscillatorStencil& op, std::span<const double> in, std::span<double> out);
void chebyshevStep(Backend b, const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma);
void gram(Backend b, std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g);

}  // namespace spinlab::kernels
