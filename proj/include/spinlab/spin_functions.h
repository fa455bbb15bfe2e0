#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/polynomial.h"

namespace spinlab {

/// The named phase-space functions of one flat rotating particle, built with
/// symbolic κ:
///   S3 = ½(x p_y − y p_x),  S2 = ½(κ x y + κ⁻¹ p_x p_y),
///   S1 = ¼[κ(x² − y²) + κ⁻¹(p_x² − p_y²)],  S0 = ½[κ(x² + y²) + κ⁻¹(p_x² + p_y²)],
///   S² = S1² + S2² + S3²,  S± = S1 ± i S2,  N = S+ S−,  u = x p_x + y p_y.
struct SpinSet {
  unsigned particle = 1;
  PhasePolynomial s1, s2, s3, s0, sSquared, sPlus, sMinus, n, unit;

  /// S1, S2, S3 by 1-based index.
  const PhasePolynomial& component(int i) const;
  /// Display prefix used in check identifiers: "S" for particle 1, "R" for 2.
  std::string label() const;
};

SpinSet makeSpinSet(unsigned particle = 1);

/// The angular momentum x p_y − y p_x of one particle.
PhasePolynomial angularMomentumZ(unsigned particle = 1);

enum class CheckStatus { Verified, Discrepant };

std::string toString(CheckStatus s);

/// One audited claim. `claimed` holds the asserted right-hand side and
/// `computed` what the computation produced, both as canonical text.
struct CheckResult {
  std::string section;
  std::string claimId;
  CheckStatus status = CheckStatus::Verified;
  std::string claimed;
  std::string computed;
  std::string note;
};

/// The scalar c with c·from == to, if one exists and `from` is nonzero.
std::optional<GaussianRational> scalarRatio(const PhasePolynomial& from, const PhasePolynomial& to);

/// Verified iff the two polynomials are identical. A discrepancy that is a pure
/// rescaling of the claim gets the factor recorded in `note`.
CheckResult comparePolynomials(std::string section, std::string claimId, const PhasePolynomial& claimed,
                               const PhasePolynomial& computed, std::string note = {});

/// Levi-Civita symbol for indices in {1,2,3}.
int leviCivita(int i, int j, int k);

/// All nine ordered pairs {S_i,S_j} against ε_ijk S_k.
std::vector<CheckResult> verifySu2(const SpinSet& set);

/// S² = S0²/4, {S0,S_i} = {S²,S_i} = 0, N = S1² + S2², N = S² − S3² and its
/// explicit coordinate form.
std::vector<CheckResult> verifyCasimir(const SpinSet& set);

/// Brackets and anti-brackets of the ladder functions, each against the
/// claimed identity. {S+,S−} computes to −2i S3 and is reported as such.
std::vector<CheckResult> verifyLadder(const SpinSet& set);

/// su(2) closure for both sets plus the nine cross brackets {S_i,R_j} = 0.
/// Throws SemanticError if both sets describe the same particle.
std::vector<CheckResult> verifyTwoParticle(const SpinSet& a, const SpinSet& b);

/// The verbatim two-particle function listing (S1/S2 roles swapped relative
/// to the one-particle definitions and S3 = ½(x p_y + y p_x), no κ), checked
/// against the closure it is claimed to satisfy.
struct PrintedTwoParticleSet {
  unsigned particle = 1;
  PhasePolynomial s1, s2, s3;
  const PhasePolynomial& component(int i) const;
};

PrintedTwoParticleSet makePrintedTwoParticleSet(unsigned particle);
std::vector<CheckResult> verifyPrintedTwoParticleListing();

}  // namespace spinlab
