#include "spinlab/dynamics.h"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "spinlab/errors.h"

namespace spinlab {

void PhysicalParams::validate() const {
  for (double v : {charge, mass, lightSpeed, fieldB3, landeG, kappaValue})
    if (!std::isfinite(v)) throw std::invalid_argument("physical parameters must be finite");
  if (!(mass > 0)) throw std::invalid_argument("mass must be positive");
  if (!(lightSpeed > 0)) throw std::invalid_argument("light speed must be positive");
  if (!(kappaValue > 0)) throw std::invalid_argument("kappa must be positive");
}

mpq_class PhysicalParams::exactOmega0() const {
  validate();
  mpq_class w = mpq_class(charge) * mpq_class(fieldB3) / (2 * mpq_class(mass) * mpq_class(lightSpeed));
  w.canonicalize();
  return w;
}

mpq_class PhysicalParams::exactOmega1() const { return mpq_class(landeG) * exactOmega0(); }

mpq_class PhysicalParams::exactGyromagnetic() const {
  validate();
  mpq_class g = mpq_class(landeG) * mpq_class(charge) / (2 * mpq_class(mass) * mpq_class(lightSpeed));
  g.canonicalize();
  return g;
}

PhasePolynomial hamiltonian(const PhysicalParams& params, const SpinSet& set) {
  const PhasePolynomial h = GaussianRational(-params.exactOmega1()) * set.s3;
  return substituteKappa(h, mpq_class(params.kappaValue));
}

PhasePolynomial timeDerivative(const PhasePolynomial& f, const PhasePolynomial& H) { return poissonBracket(f, H); }

std::vector<CheckResult> verifyVectorForm(const PhysicalParams& params, const SpinSet& set) {
  const PhasePolynomial H = hamiltonian(params, set);
  const GaussianRational gamma(params.exactGyromagnetic());
  const std::array<GaussianRational, 3> field = {0, 0, GaussianRational(mpq_class(params.fieldB3))};
  std::vector<CheckResult> out;
  for (int i = 1; i <= 3; ++i) {
    // (S ∧ B)_i = ε_ijk S_j B_k
    PhasePolynomial cross;
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (const int e = leviCivita(i, j, k); e != 0 && !field[k - 1].isZero())
          cross += GaussianRational(e) * field[k - 1] * set.component(j);
    const std::string name = set.label() + std::to_string(i);
    out.push_back(comparePolynomials("dynamics", "eq15:d" + name + "/dt=(ge/2mc)(SxB)_" + std::to_string(i),
                                     gamma * cross, timeDerivative(set.component(i), H)));
  }
  return out;
}

std::vector<CheckResult> verifyEquationsOfMotion(const PhysicalParams& params, const SpinSet& set) {
  const PhasePolynomial H = hamiltonian(params, set);
  const GaussianRational w1(params.exactOmega1());
  const auto& L = set.label();
  return {
      comparePolynomials("dynamics", "eq11:{" + L + "1,H}", w1 * set.s2, timeDerivative(set.s1, H)),
      comparePolynomials("dynamics", "eq12:{" + L + "2,H}", -w1 * set.s1, timeDerivative(set.s2, H)),
      comparePolynomials("dynamics", "eq12:{" + L + "3,H}", {}, timeDerivative(set.s3, H)),
  };
}

SpinTriple closedFormPrecession(double s1At0, double s2At0, double s3At0, double omega1, double t) {
  const double c = std::cos(omega1 * t);
  const double s = std::sin(omega1 * t);
  return {s1At0 * c + s2At0 * s, -s1At0 * s + s2At0 * c, s3At0};
}

namespace {

// Planar state order (x, y, p_x, p_y) mapped to canonical variables.
std::array<CanonicalVariable, 4> stateVariables(unsigned particle) {
  return {CanonicalVariable::x(particle), CanonicalVariable::y(particle), CanonicalVariable::px(particle),
          CanonicalVariable::py(particle)};
}

class PlanarEvaluator {
 public:
  PlanarEvaluator(unsigned particle) : vars_(stateVariables(particle)), coords_((particle - 1) * 4 + 4, 0.0) {}

  std::span<const double> load(const PlanarState& s) {
    for (std::size_t i = 0; i < 4; ++i) coords_[vars_[i].ordinal()] = s[i];
    return coords_;
  }

 private:
  std::array<CanonicalVariable, 4> vars_;
  std::vector<double> coords_;
};

}  // namespace

Trajectory integrateFlow(const PhasePolynomial& H, const PlanarState& initial, double dt, std::size_t steps,
                         const SpinSet& set, double kappaValue) {
  if (!(dt > 0) || !std::isfinite(dt)) throw std::invalid_argument("integrateFlow: dt must be positive");
  for (const auto& v : H.variables())
    if (v.particle != set.particle)
      throw std::invalid_argument("integrateFlow: H involves " + v.name() + ", outside particle " +
                                  std::to_string(set.particle));

  const auto vars = stateVariables(set.particle);
  // Hamilton's equations: ẋ = ∂H/∂p_x, ẏ = ∂H/∂p_y, ṗ_x = −∂H/∂x, ṗ_y = −∂H/∂y.
  const std::array<CompiledPolynomial, 4> rhs = {
      CompiledPolynomial(partialDerivative(H, vars[2]), kappaValue),
      CompiledPolynomial(partialDerivative(H, vars[3]), kappaValue),
      CompiledPolynomial(-partialDerivative(H, vars[0]), kappaValue),
      CompiledPolynomial(-partialDerivative(H, vars[1]), kappaValue),
  };
  const std::array<CompiledPolynomial, 4> observables = {
      CompiledPolynomial(set.s1, kappaValue), CompiledPolynomial(set.s2, kappaValue),
      CompiledPolynomial(set.s3, kappaValue), CompiledPolynomial(set.s0, kappaValue)};

  PlanarEvaluator eval(set.particle);
  auto field = [&](const PlanarState& s) {
    const auto coords = eval.load(s);
    PlanarState d;
    for (std::size_t i = 0; i < 4; ++i) d[i] = rhs[i](coords).real();
    return d;
  };
  auto sample = [&](const PlanarState& s) {
    const auto coords = eval.load(s);
    SpinSample out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = observables[i](coords).real();
    return out;
  };
  auto shifted = [](const PlanarState& s, const PlanarState& d, double h) {
    PlanarState r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = s[i] + h * d[i];
    return r;
  };

  Trajectory traj;
  traj.particle = set.particle;
  traj.times.reserve(steps + 1);
  traj.points.reserve(steps + 1);
  traj.sValues.reserve(steps + 1);

  PlanarState state = initial;
  traj.times.push_back(0.0);
  traj.points.push_back(state);
  traj.sValues.push_back(sample(state));
  for (std::size_t n = 1; n <= steps; ++n) {
    const PlanarState k1 = field(state);
    const PlanarState k2 = field(shifted(state, k1, dt / 2));
    const PlanarState k3 = field(shifted(state, k2, dt / 2));
    const PlanarState k4 = field(shifted(state, k3, dt));
    for (std::size_t i = 0; i < 4; ++i) state[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    for (double v : state)
      if (!std::isfinite(v))
        throw NumericalError("integrateFlow: non-finite state at step " + std::to_string(n) +
                             " (t = " + std::to_string(static_cast<double>(n) * dt) + ")");
    traj.times.push_back(static_cast<double>(n) * dt);
    traj.points.push_back(state);
    traj.sValues.push_back(sample(state));
  }
  return traj;
}

double maxClosedFormDeviation(const Trajectory& traj, double omega1) {
  if (traj.size() == 0) return 0.0;
  const auto& s0 = traj.sValues.front();
  double worst = 0.0;
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const SpinTriple exact = closedFormPrecession(s0[0], s0[1], s0[2], omega1, traj.times[n]);
    const auto& s = traj.sValues[n];
    worst = std::max({worst, std::abs(s[0] - exact.s1), std::abs(s[1] - exact.s2), std::abs(s[2] - exact.s3)});
  }
  return worst;
}

ConservationDrift conservationDrift(const Trajectory& traj) {
  ConservationDrift d;
  if (traj.size() == 0) return d;
  const auto& first = traj.sValues.front();
  const double scale3 = std::max(1.0, std::abs(first[2]));
  const double scale0 = std::max(1.0, std::abs(first[3]));
  for (const auto& s : traj.sValues) {
    d.s3 = std::max(d.s3, std::abs(s[2] - first[2]) / scale3);
    d.s0 = std::max(d.s0, std::abs(s[3] - first[3]) / scale0);
  }
  return d;
}

void writeCsv(const Trajectory& traj, std::ostream& out) {
  out << "time,x,y,px,py,S1,S2,S3,S0\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    out << traj.times[n];
    for (double v : traj.points[n]) out << ',' << v;
    for (double v : traj.sValues[n]) out << ',' << v;
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace spinlab
