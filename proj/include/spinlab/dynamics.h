#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "spinlab/polynomial.h"
#include "spinlab/spin_functions.h"

namespace spinlab {

/// Charge, mass, light speed, z-field and Landé factor of the interaction
/// H = −ω₁ S3 with ω₀ = eB₃/(2mc) and ω₁ = g ω₀.
struct PhysicalParams {
  double charge = 1.0;
  double mass = 1.0;
  double lightSpeed = 1.0;
  double fieldB3 = 1.0;
  double landeG = 2.0;
  double kappaValue = 1.0;

  /// Throws std::invalid_argument unless m > 0, c > 0, κ > 0 and all finite.
  void validate() const;

  /// The derived frequencies computed in exact arithmetic from the (exactly
  /// representable) double inputs, so symbolic identities stay exact.
  mpq_class exactOmega0() const;
  mpq_class exactOmega1() const;
  /// g e / (2 m c), the gyromagnetic factor in dS/dt = (ge/2mc) S ∧ B.
  mpq_class exactGyromagnetic() const;

  double omega0() const { return exactOmega0().get_d(); }
  double omega1() const { return exactOmega1().get_d(); }
};

/// −ω₁·S3 with κ replaced by params.kappaValue.
PhasePolynomial hamiltonian(const PhysicalParams& params, const SpinSet& set);

/// df/dt = {f, H}.
PhasePolynomial timeDerivative(const PhasePolynomial& f, const PhasePolynomial& H);

/// The three components of {S_i, H} = (ge/2mc)(S ∧ B)_i with B = (0, 0, B₃).
std::vector<CheckResult> verifyVectorForm(const PhysicalParams& params, const SpinSet& set);

/// dS1/dt = ω₁S2, dS2/dt = −ω₁S1, dS3/dt = 0 against the generated brackets.
std::vector<CheckResult> verifyEquationsOfMotion(const PhysicalParams& params, const SpinSet& set);

struct SpinTriple {
  double s1 = 0, s2 = 0, s3 = 0;
};

/// Exact solution of the linear precession equations.
SpinTriple closedFormPrecession(double s1At0, double s2At0, double s3At0, double omega1, double t);

/// Single-particle phase point (x, y, p_x, p_y).
using PlanarState = std::array<double, 4>;

/// Recorded S1, S2, S3, S0 at one time.
using SpinSample = std::array<double, 4>;

struct Trajectory {
  unsigned particle = 1;
  std::vector<double> times;
  std::vector<PlanarState> points;
  std::vector<SpinSample> sValues;

  std::size_t size() const { return times.size(); }
};

/// Integrates q̇ = ∂H/∂p, ṗ = −∂H/∂q with classic RK4 for `steps` steps,
/// recording the state and the S-values (at the given κ) after every step,
/// including the initial point. Throws std::invalid_argument for dt <= 0 or if
/// H involves a different particle, NumericalError if the state leaves the
/// finite range.
Trajectory integrateFlow(const PhasePolynomial& H, const PlanarState& initial, double dt, std::size_t steps,
                         const SpinSet& set, double kappaValue = 1.0);

/// Max over the trajectory of |S_i(numeric) − S_i(closed form)|, i = 1..3.
double maxClosedFormDeviation(const Trajectory& traj, double omega1);

/// Max drift of S3 and S0 from their initial values, scaled by max(1, |S(0)|).
struct ConservationDrift {
  double s3 = 0;
  double s0 = 0;
};
ConservationDrift conservationDrift(const Trajectory& traj);

/// CSV with header time,x,y,px,py,S1,S2,S3,S0, one row per sample.
void writeCsv(const Trajectory& traj, std::ostream& out);

}  // namespace spinlab
