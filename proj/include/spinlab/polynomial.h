#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/gaussian_rational.h"

namespace spinlab {

enum class Axis : std::uint8_t { X = 0, Y = 1 };
enum class Kind : std::uint8_t { Coordinate = 0, Momentum = 1 };

/// One canonical coordinate or momentum of the planar phase space. There is no
/// z axis, so z = p_z = 0 holds by construction.
struct CanonicalVariable {
  unsigned particle = 1;
  Axis axis = Axis::X;
  Kind kind = Kind::Coordinate;

  static CanonicalVariable x(unsigned particle = 1) { return {particle, Axis::X, Kind::Coordinate}; }
  static CanonicalVariable y(unsigned particle = 1) { return {particle, Axis::Y, Kind::Coordinate}; }
  static CanonicalVariable px(unsigned particle = 1) { return {particle, Axis::X, Kind::Momentum}; }
  static CanonicalVariable py(unsigned particle = 1) { return {particle, Axis::Y, Kind::Momentum}; }

  /// Dense index consistent with the (particle, axis, kind) ordering.
  std::size_t ordinal() const {
    return (particle - 1) * 4 + static_cast<std::size_t>(axis) * 2 + static_cast<std::size_t>(kind);
  }
  static CanonicalVariable fromOrdinal(std::size_t ordinal);

  CanonicalVariable conjugate() const {
    return {particle, axis, kind == Kind::Coordinate ? Kind::Momentum : Kind::Coordinate};
  }

  /// "x1", "px1", "y2", ...
  std::string name() const;

  friend auto operator<=>(const CanonicalVariable& a, const CanonicalVariable& b) {
    return a.ordinal() <=> b.ordinal();
  }
  friend bool operator==(const CanonicalVariable&, const CanonicalVariable&) = default;
};

/// Power product of canonical variables times a power of the scale symbol κ.
/// Exponents are stored densely by variable ordinal with trailing zeros trimmed,
/// so equal monomials have equal representations.
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(CanonicalVariable v, unsigned power = 1);
  static Monomial kappa(int power);

  unsigned exponent(CanonicalVariable v) const {
    const auto i = v.ordinal();
    return i < exponents_.size() ? exponents_[i] : 0U;
  }
  std::span<const unsigned> exponents() const { return exponents_; }
  int kappaPower() const { return kappaPower_; }
  /// Total degree in the canonical variables (κ does not count).
  unsigned degree() const;
  bool isConstant() const { return exponents_.empty(); }

  /// Variables with nonzero exponent, in canonical order.
  std::vector<std::pair<CanonicalVariable, unsigned>> factors() const;

  Monomial operator*(const Monomial& o) const;
  /// Lowers the exponent of v by one; requires exponent(v) > 0.
  Monomial withoutOne(CanonicalVariable v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();

  std::vector<unsigned> exponents_;
  int kappaPower_ = 0;
};

/// Graded lexicographic order: higher degree first, then lexicographic on the
/// canonical variable order with larger exponents first, then higher κ power.
struct GradedLexOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact polynomial in the canonical variables with Gaussian-rational
/// coefficients graded by powers of κ. Never stores a zero coefficient.
class PhasePolynomial {
 public:
  using TermMap = std::map<Monomial, GaussianRational, GradedLexOrder>;

  PhasePolynomial() = default;
  PhasePolynomial(GaussianRational c);
  PhasePolynomial(long c) : PhasePolynomial(GaussianRational(c)) {}

  static PhasePolynomial term(GaussianRational coefficient, Monomial monomial);
  static PhasePolynomial variable(CanonicalVariable v) { return term(1, Monomial::of(v)); }
  static PhasePolynomial kappa(int power = 1) { return term(1, Monomial::kappa(power)); }
  static PhasePolynomial imaginaryUnit() { return GaussianRational::imaginaryUnit(); }

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  unsigned degree() const;
  std::set<CanonicalVariable> variables() const;
  std::set<unsigned> particles() const;
  /// True when every coefficient has zero imaginary part.
  bool isReal() const;

  PhasePolynomial operator-() const;
  PhasePolynomial& operator+=(const PhasePolynomial& o);
  PhasePolynomial& operator-=(const PhasePolynomial& o);
  PhasePolynomial& operator*=(const PhasePolynomial& o) { return *this = *this * o; }

  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);
  friend bool operator==(const PhasePolynomial& a, const PhasePolynomial& b) { return a.terms_ == b.terms_; }

  PhasePolynomial pow(unsigned exponent) const;

  /// Adds c·m in place, dropping the term if it cancels.
  void addTerm(const Monomial& m, const GaussianRational& c);

 private:
  TermMap terms_;
};

PhasePolynomial add(const PhasePolynomial& f, const PhasePolynomial& g);
PhasePolynomial mul(const PhasePolynomial& f, const PhasePolynomial& g);

PhasePolynomial partialDerivative(const PhasePolynomial& f, CanonicalVariable v);

/// {f,g} = Σ_k ∂f/∂q_k ∂g/∂p_k − ∂f/∂p_k ∂g/∂q_k over every canonical pair of
/// the particles appearing in f or g.
PhasePolynomial poissonBracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// {f,g}_A = Σ_k ∂f/∂q_k ∂g/∂p_k + ∂f/∂p_k ∂g/∂q_k, the symmetric companion.
PhasePolynomial antiBracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// Replaces κ by an exact positive value, leaving a κ-free polynomial.
PhasePolynomial substituteKappa(const PhasePolynomial& f, const mpq_class& kappaValue);

using PhasePoint = std::map<CanonicalVariable, double>;

/// Floating-point substitution. Throws std::invalid_argument if a variable of f
/// has no value in `point` or if kappaValue is not positive.
std::complex<double> evaluate(const PhasePolynomial& f, const PhasePoint& point, double kappaValue);

/// Flattened form of a polynomial for repeated evaluation with a fixed κ.
/// Coordinates are passed densely by CanonicalVariable::ordinal().
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  CompiledPolynomial(const PhasePolynomial& f, double kappaValue);

  std::complex<double> operator()(std::span<const double> coords) const;
  /// Number of coordinates the evaluator reads.
  std::size_t arity() const { return arity_; }

 private:
  struct Term {
    std::complex<double> coefficient;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Term> terms_;
  std::size_t arity_ = 0;
};

}  // namespace spinlab
