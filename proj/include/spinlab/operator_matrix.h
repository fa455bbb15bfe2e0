#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "spinlab/gaussian_rational.h"

namespace spinlab {

using ExactVector = std::vector<GaussianRational>;

/// Square matrix with exact Gaussian-rational entries, scaled by ħ^hbarPower.
/// ħ is kept as a grading symbol and is numerically 1.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(std::size_t dim, int hbarPower = 0);
  /// Row-major entries; throws std::invalid_argument unless rows are square.
  OperatorMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows, int hbarPower = 0);

  static OperatorMatrix identity(std::size_t dim, int hbarPower = 0);
  static OperatorMatrix diagonal(const std::vector<GaussianRational>& diag, int hbarPower = 0);

  std::size_t dim() const { return dim_; }
  int hbarPower() const { return hbarPower_; }

  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  GaussianRational& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const std::vector<GaussianRational>& entries() const { return entries_; }

  bool isZero() const;
  bool isDiagonal() const;
  OperatorMatrix adjoint() const;
  /// Multiplies every entry by c and the grading by ħ^hbarShift.
  OperatorMatrix scaled(const GaussianRational& c, int hbarShift = 0) const;
  /// The same entries at another ħ power.
  OperatorMatrix withHbarPower(int hbarPower) const;

  ExactVector apply(const ExactVector& v) const;

  /// Sum and difference need equal dimensions and equal ħ powers (a zero
  /// operand adopts the other's power); throws std::invalid_argument otherwise.
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  /// Entry-wise exact equality; two zero matrices are equal at any ħ power.
  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b);

  /// Single-line "[[a, b], [c, d]]" text with the ħ power appended.
  std::string toString() const;

 private:
  std::size_t dim_ = 0;
  int hbarPower_ = 0;
  std::vector<GaussianRational> entries_;
};

/// Textbook triple-loop product, kept independent of operator* for tests.
OperatorMatrix naiveProduct(const OperatorMatrix& a, const OperatorMatrix& b);

/// {"dim": n, "hbarPower": p, "entries": [["a+bi", ...], ...]} (row-major).
nlohmann::json toJson(const OperatorMatrix& m);
/// Throws std::invalid_argument on schema violations.
OperatorMatrix operatorFromJson(const nlohmann::json& j);

/// Pauli matrix σ_k, k in {1,2,3}. Throws std::invalid_argument otherwise.
OperatorMatrix pauli(int k);

enum class SpinConvention {
  Standard,   ///< Ŝ_k = (ħ/2)σ_k
  PaperEq22,  ///< verbatim variant: Ŝ1 = (ħ/2)σ1, Ŝ2 = −i(ħ/2)σ2, Ŝ3 = (ħ/2)σ3
};

enum class LadderSource {
  FromSFunctions,  ///< Ŝ± = Ŝ1 ± iŜ2 under the standard convention
  PaperEq24,       ///< the printed matrices (ħ/2)[[0,0],[1,0]] and (ħ/2)[[0,1],[0,0]]
};

std::string toString(SpinConvention c);
std::string toString(LadderSource s);

std::array<OperatorMatrix, 3> spinOperators(SpinConvention convention);
std::pair<OperatorMatrix, OperatorMatrix> ladderMatrices(LadderSource source);

/// [A,B] = AB − BA; throws std::invalid_argument on dimension mismatch.
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
/// {A,B} = AB + BA; throws std::invalid_argument on dimension mismatch.
OperatorMatrix antiCommutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Kronecker product; basis |s⟩⊗|r⟩ has index s·dim(B) + r. ħ powers add.
OperatorMatrix tensorProduct(const OperatorMatrix& a, const OperatorMatrix& b);
/// A in position `slot` (1-based) of an nSlots-fold product, identities elsewhere.
OperatorMatrix embed(const OperatorMatrix& a, int slot, int nSlots = 2);

/// One eigenvalue with its exact eigenspace basis (in units of ħ^hbarPower).
struct Eigenspace {
  GaussianRational value;
  std::size_t algebraicMultiplicity = 0;
  std::vector<ExactVector> basis;
};

/// Exact eigen-decomposition for matrices whose characteristic polynomial has
/// rational coefficients and splits over the rationals (all Hermitian cases
/// used here). Eigenvalues are returned in ascending order. Throws
/// std::domain_error if the spectrum is not rational.
std::vector<Eigenspace> exactEigen(const OperatorMatrix& m);

/// Coefficients c_0..c_n (c_n = 1) of det(λI − M), Faddeev-LeVerrier.
std::vector<GaussianRational> characteristicPolynomial(const OperatorMatrix& m);

/// Basis of the null space of the row-major rows × cols matrix, exact RREF.
std::vector<ExactVector> nullSpace(const std::vector<GaussianRational>& rowMajor, std::size_t rows, std::size_t cols);

struct NumberOperatorResult {
  OperatorMatrix matrix;
  std::vector<Eigenspace> spectrum;
};

/// N̂ = Ŝ+ Ŝ− with its exact spectrum.
NumberOperatorResult numberOperator(const OperatorMatrix& sPlus, const OperatorMatrix& sMinus);

struct JointEigenproblem {
  std::vector<OperatorMatrix> operators;
  std::vector<GaussianRational> targetEigenvalues;  ///< one per operator, in its ħ units
};

/// Mutually orthogonal exact basis of ∩_k ker(A_k − λ_k). Empty if the
/// intersection is trivial. Throws std::invalid_argument if the operators are
/// not pairwise commuting, differ in dimension or the target count mismatches.
std::vector<ExactVector> jointEigenspace(const JointEigenproblem& problem);

/// Hermitian inner product ⟨a|b⟩.
GaussianRational innerProduct(const ExactVector& a, const ExactVector& b);
/// a/‖a‖ in floating point.
std::vector<std::complex<double>> normalized(const ExactVector& v);
/// Rescales v so its first nonzero component is 1.
ExactVector fixPhase(const ExactVector& v);

/// Swaps the two particles: P|s⟩|r⟩ = |r⟩|s⟩ on the 4-dimensional product space.
OperatorMatrix exchangeOperator();

/// Total z-spin Ŝ3⊗1 + 1⊗R̂3 (standard Ŝ3, shared by both ladder sources).
OperatorMatrix totalSpinZ();
/// N_total = Ŝ+Ŝ−⊗1 + 1⊗R̂+R̂− for the given ladder source.
OperatorMatrix totalNumber(LadderSource source);

struct ExclusionResult {
  LadderSource source = LadderSource::FromSFunctions;
  GaussianRational numberLevel;                ///< doubly degenerate level of N_total
  std::vector<ExactVector> jointBasis;         ///< the 2-dimensional joint eigenspace
  ExactVector singlet;                         ///< exchange-antisymmetric member, phase fixed
  std::vector<std::complex<double>> singletNormalized;
  ExactVector symmetricPartner;                ///< rejected member
  std::string rejectionReason;
};

/// Selects, inside the joint eigenspace of (S3+R3 at 0, N_total at its doubly
/// degenerate level), the eigenvector of the exchange operator with eigenvalue
/// −1 and rejects the +1 partner.
ExclusionResult exclusionSinglet(LadderSource source = LadderSource::FromSFunctions);

nlohmann::json toJson(const ExclusionResult& r);

}  // namespace spinlab
