#include "spinlab/kernels.h"

#include <stdexcept>

#include <omp.h>

namespace spinlab::kernels {

OscillatorStencil OscillatorStencil::make(std::size_t n, double halfWidth, double mass, double omega, double hbar) {
  if (n == 0 || !(halfWidth > 0) || !(mass > 0) || !(hbar > 0) || !(omega > 0))
    throw std::invalid_argument("OscillatorStencil: n, L, m, omega and hbar must be positive");
  OscillatorStencil s;
  s.n = n;
  s.halfWidth = halfWidth;
  s.spacing = 2.0 * halfWidth / static_cast<double>(n + 1);
  s.hopping = hbar * hbar / (2.0 * mass * s.spacing * s.spacing);
  s.potentialScale = 0.5 * mass * omega * omega;
  return s;
}

double OscillatorStencil::diagonal(std::size_t i, std::size_t j) const {
  const double x = coordinate(i);
  const double y = coordinate(j);
  return 4.0 * hopping + potentialScale * (x * x + y * y);
}

double OscillatorStencil::upperBound() const {
  const double edge = coordinate(n - 1);
  return 8.0 * hopping + potentialScale * 2.0 * edge * edge;
}

std::string toString(Backend b) { return b == Backend::Serial ? "serial" : "openmp"; }

int ompThreads() { return omp_get_max_threads(); }

namespace {

void checkBlock(const OscillatorStencil& op, std::span<const double> v, std::size_t cols, const char* what) {
  if (v.size() < op.size() * cols) throw std::invalid_argument(std::string(what) + ": block too small");
}

// One output element of H·v.
inline double stencilAt(const OscillatorStencil& op, const double* v, std::size_t i, std::size_t j) {
  const std::size_t n = op.n;
  const std::size_t idx = j * n + i;
  double neighbours = 0.0;
  if (i > 0) neighbours += v[idx - 1];
  if (i + 1 < n) neighbours += v[idx + 1];
  if (j > 0) neighbours += v[idx - n];
  if (j + 1 < n) neighbours += v[idx + n];
  return op.diagonal(i, j) * v[idx] - op.hopping * neighbours;
}

inline double dotColumns(const double* a, const double* b, std::size_t rows) {
  double s = 0.0;
  for (std::size_t r = 0; r < rows; ++r) s += a[r] * b[r];
  return s;
}

}  // namespace

namespace serial {

void apply(const OscillatorStencil& op, std::span<const double> in, std::span<double> out) {
  checkBlock(op, in, 1, "apply");
  checkBlock(op, out, 1, "apply");
  for (std::size_t j = 0; j < op.n; ++j)
    for (std::size_t i = 0; i < op.n; ++i) out[j * op.n + i] = stencilAt(op, in.data(), i, j);
}

void chebyshevStep(const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma) {
  checkBlock(op, y, cols, "chebyshevStep");
  checkBlock(op, z, cols, "chebyshevStep");
  if (gamma != 0.0) checkBlock(op, x, cols, "chebyshevStep");
  const std::size_t size = op.size();
  for (std::size_t c = 0; c < cols; ++c) {
    const double* yc = y.data() + c * size;
    const double* xc = gamma != 0.0 ? x.data() + c * size : nullptr;
    double* zc = z.data() + c * size;
    for (std::size_t j = 0; j < op.n; ++j)
      for (std::size_t i = 0; i < op.n; ++i) {
        const std::size_t idx = j * op.n + i;
        double v = alpha * stencilAt(op, yc, i, j) + beta * yc[idx];
        if (xc != nullptr) v += gamma * xc[idx];
        zc[idx] = v;
      }
  }
}

void gram(std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g) {
  if (x.size() < rows * xcols || y.size() < rows * ycols || g.size() < xcols * ycols)
    throw std::invalid_argument("gram: block too small");
  for (std::size_t b = 0; b < ycols; ++b)
    for (std::size_t a = 0; a < xcols; ++a)
      g[b * xcols + a] = dotColumns(x.data() + a * rows, y.data() + b * rows, rows);
}

}  // namespace serial

namespace omp {

void apply(const OscillatorStencil& op, std::span<const double> in, std::span<double> out) {
  checkBlock(op, in, 1, "apply");
  checkBlock(op, out, 1, "apply");
  const auto n = static_cast<std::ptrdiff_t>(op.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      out[j * n + i] = stencilAt(op, in.data(), static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

void chebyshevStep(const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma) {
  checkBlock(op, y, cols, "chebyshevStep");
  checkBlock(op, z, cols, "chebyshevStep");
  if (gamma != 0.0) checkBlock(op, x, cols, "chebyshevStep");
  const std::size_t size = op.size();
  const auto rowsTotal = static_cast<std::ptrdiff_t>(cols * op.n);
  // One task per (column, grid row) pair.
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < rowsTotal; ++t) {
    const std::size_t c = static_cast<std::size_t>(t) / op.n;
    const std::size_t j = static_cast<std::size_t>(t) % op.n;
    const double* yc = y.data() + c * size;
    const double* xc = gamma != 0.0 ? x.data() + c * size : nullptr;
    double* zc = z.data() + c * size;
    for (std::size_t i = 0; i < op.n; ++i) {
      const std::size_t idx = j * op.n + i;
      double v = alpha * stencilAt(op, yc, i, j) + beta * yc[idx];
      if (xc != nullptr) v += gamma * xc[idx];
      zc[idx] = v;
    }
  }
}

void gram(std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g) {
  if (x.size() < rows * xcols || y.size() < rows * ycols || g.size() < xcols * ycols)
    throw std::invalid_argument("gram: block too small");
  // Parallel over output entries; each dot product is summed in serial order.
  const auto pairs = static_cast<std::ptrdiff_t>(xcols * ycols);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t p = 0; p < pairs; ++p) {
    const std::size_t b = static_cast<std::size_t>(p) / xcols;
    const std::size_t a = static_cast<std::size_t>(p) % xcols;
    g[b * xcols + a] = dotColumns(x.data() + a * rows, y.data() + b * rows, rows);
  }
}

}  // namespace omp

void apply(Backend b, const OscillatorStencil& op, std::span<const double> in, std::span<double> out) {
  b == Backend::Serial ? serial::apply(op, in, out) : omp::apply(op, in, out);
}

void chebyshevStep(Backend b, const OscillatorStencil& op, std::span<const double> x, std::span<const double> y,
                   std::span<double> z, std::size_t cols, double alpha, double beta, double gamma) {
  b == Backend::Serial ? serial::chebyshevStep(op, x, y, z, cols, alpha, beta, gamma)
                       : omp::chebyshevStep(op, x, y, z, cols, alpha, beta, gamma);
}

void gram(Backend b, std::span<const double> x, std::size_t xcols, std::span<const double> y, std::size_t ycols,
          std::size_t rows, std::span<double> g) {
  b == Backend::Serial ? serial::gram(x, xcols, y, ycols, rows, g) : omp::gram(x, xcols, y, ycols, rows, g);
}

}  // namespace spinlab::kernels
