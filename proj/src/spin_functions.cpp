#include "spinlab/spin_functions.h"

#include "spinlab/errors.h"
#include "spinlab/expr_parser.h"

namespace spinlab {

namespace {

const std::string kClassical = "classical";
const std::string kTwoParticle = "two-particle";
const std::string kPrintedListing = "two-particle-printed";

PhasePolynomial half() { return GaussianRational(rational(1, 2)); }
PhasePolynomial quarter() { return GaussianRational(rational(1, 4)); }

std::string pairId(const std::string& tag, const std::string& a, const std::string& b) {
  return tag + ":{" + a + "," + b + "}";
}

}  // namespace

PhasePolynomial angularMomentumZ(unsigned particle) {
  const auto x = PhasePolynomial::variable(CanonicalVariable::x(particle));
  const auto y = PhasePolynomial::variable(CanonicalVariable::y(particle));
  const auto px = PhasePolynomial::variable(CanonicalVariable::px(particle));
  const auto py = PhasePolynomial::variable(CanonicalVariable::py(particle));
  return x * py - y * px;
}

SpinSet makeSpinSet(unsigned particle) {
  if (particle == 0) throw SemanticError("particle index must be >= 1");
  const auto x = PhasePolynomial::variable(CanonicalVariable::x(particle));
  const auto y = PhasePolynomial::variable(CanonicalVariable::y(particle));
  const auto px = PhasePolynomial::variable(CanonicalVariable::px(particle));
  const auto py = PhasePolynomial::variable(CanonicalVariable::py(particle));
  const auto k = PhasePolynomial::kappa(1);
  const auto kInv = PhasePolynomial::kappa(-1);
  const auto i = PhasePolynomial::imaginaryUnit();

  const PhasePolynomial quadXY = k * x * y + kInv * px * py;
  const PhasePolynomial quad1 = half() * (k * (x * x - y * y) + kInv * (px * px - py * py));

  SpinSet s;
  s.particle = particle;
  s.s3 = half() * angularMomentumZ(particle);
  s.s2 = half() * quadXY;
  s.s1 = half() * quad1;
  s.s0 = half() * (k * (x * x + y * y) + kInv * (px * px + py * py));
  s.sSquared = s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3;
  s.sPlus = s.s1 + i * s.s2;
  s.sMinus = s.s1 - i * s.s2;
  s.n = s.sPlus * s.sMinus;
  s.unit = x * px + y * py;
  return s;
}

const PhasePolynomial& SpinSet::component(int i) const {
  switch (i) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::out_of_range("spin component index must be 1, 2 or 3");
  }
}

std::string SpinSet::label() const {
  if (particle == 1) return "S";
  if (particle == 2) return "R";
  return "S" + std::to_string(particle) + "_";
}

std::string toString(CheckStatus s) { return s == CheckStatus::Verified ? "VERIFIED" : "DISCREPANT"; }

std::optional<GaussianRational> scalarRatio(const PhasePolynomial& from, const PhasePolynomial& to) {
  if (from.isZero() || from.size() != to.size()) return std::nullopt;
  const auto& [m0, c0] = *from.terms().begin();
  const auto it = to.terms().find(m0);
  if (it == to.terms().end()) return std::nullopt;
  const GaussianRational ratio = it->second / c0;
  if (GaussianRational(ratio) * from != to) return std::nullopt;
  return ratio;
}

CheckResult comparePolynomials(std::string section, std::string claimId, const PhasePolynomial& claimed,
                               const PhasePolynomial& computed, std::string note) {
  const bool equal = claimed == computed;
  if (!equal && note.empty()) {
    if (const auto r = scalarRatio(claimed, computed))
      note = "computed = (" + print(PhasePolynomial(*r)) + ") * claimed";
  }
  return {std::move(section), std::move(claimId), equal ? CheckStatus::Verified : CheckStatus::Discrepant,
          print(claimed), print(computed), std::move(note)};
}

int leviCivita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // Even permutations of (1,2,3) are the cyclic ones.
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

namespace {

template <typename Set>
std::vector<CheckResult> closure(const Set& set, const std::string& section, const std::string& tag,
                                 const std::string& label) {
  std::vector<CheckResult> out;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      PhasePolynomial claimed;
      for (int k = 1; k <= 3; ++k)
        if (const int e = leviCivita(i, j, k); e != 0) claimed = GaussianRational(e) * set.component(k);
      out.push_back(comparePolynomials(section, pairId(tag, label + std::to_string(i), label + std::to_string(j)),
                                       claimed, poissonBracket(set.component(i), set.component(j))));
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verifySu2(const SpinSet& set) { return closure(set, kClassical, "eq7", set.label()); }

std::vector<CheckResult> verifyCasimir(const SpinSet& set) {
  std::vector<CheckResult> out;
  const auto& L = set.label();
  out.push_back(comparePolynomials(kClassical, "eq9:" + L + "^2=" + L + "0^2/4", quarter() * set.s0 * set.s0,
                                   set.sSquared));
  for (int i = 1; i <= 3; ++i)
    out.push_back(comparePolynomials(kClassical, pairId("eq9", L + "0", L + std::to_string(i)), {},
                                     poissonBracket(set.s0, set.component(i))));
  for (int i = 1; i <= 3; ++i)
    out.push_back(comparePolynomials(kClassical, pairId("eq9", L + "^2", L + std::to_string(i)), {},
                                     poissonBracket(set.sSquared, set.component(i))));
  out.push_back(comparePolynomials(kClassical, "eq21a:N=" + L + "1^2+" + L + "2^2", set.s1 * set.s1 + set.s2 * set.s2,
                                   set.n));
  out.push_back(comparePolynomials(kClassical, "eq21b:N=" + L + "^2-" + L + "3^2", set.sSquared - set.s3 * set.s3,
                                   set.n));
  // Coordinate form: −¼ L_z² + ¼[½κ(x²+y²) + ½κ⁻¹(p_x²+p_y²)]².
  const auto lz = angularMomentumZ(set.particle);
  const PhasePolynomial explicitForm = -quarter() * lz * lz + quarter() * set.s0 * set.s0;
  out.push_back(comparePolynomials(kClassical, "eq21b:N=explicit", explicitForm, set.n));
  return out;
}

std::vector<CheckResult> verifyLadder(const SpinSet& set) {
  const auto& L = set.label();
  const std::string plus = L + "+";
  const std::string minus = L + "-";
  const auto two = PhasePolynomial(2);
  std::vector<CheckResult> out;

  // Closed form of S+ in terms of complex coordinates, against S1 + i S2.
  {
    const unsigned p = set.particle;
    const auto i = PhasePolynomial::imaginaryUnit();
    const auto zq = PhasePolynomial::variable(CanonicalVariable::x(p)) + i * PhasePolynomial::variable(CanonicalVariable::y(p));
    const auto zp = PhasePolynomial::variable(CanonicalVariable::px(p)) + i * PhasePolynomial::variable(CanonicalVariable::py(p));
    const auto wq = PhasePolynomial::variable(CanonicalVariable::x(p)) - i * PhasePolynomial::variable(CanonicalVariable::y(p));
    const auto wp = PhasePolynomial::variable(CanonicalVariable::px(p)) - i * PhasePolynomial::variable(CanonicalVariable::py(p));
    const auto k = PhasePolynomial::kappa(1);
    const auto kInv = PhasePolynomial::kappa(-1);
    out.push_back(comparePolynomials(kClassical, "eq18:" + plus, quarter() * (k * zq * zq + kInv * zp * zp), set.sPlus));
    out.push_back(comparePolynomials(kClassical, "eq19:" + minus, quarter() * (k * wq * wq + kInv * wp * wp), set.sMinus));
  }

  out.push_back(comparePolynomials(kClassical, pairId("eq19a", plus, minus), -two * set.s3,
                                   poissonBracket(set.sPlus, set.sMinus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq19a", plus, plus), {}, poissonBracket(set.sPlus, set.sPlus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq19a", minus, minus), {}, poissonBracket(set.sMinus, set.sMinus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq20", plus, minus) + "_A", set.unit,
                                   antiBracket(set.sPlus, set.sMinus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq20", plus, plus) + "_A", {}, antiBracket(set.sPlus, set.sPlus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq20", minus, minus) + "_A", {},
                                   antiBracket(set.sMinus, set.sMinus)));
  out.push_back(comparePolynomials(kClassical, pairId("eq21.0", plus, "u") + "_A", two * set.sPlus,
                                   antiBracket(set.sPlus, set.unit)));
  out.push_back(comparePolynomials(kClassical, pairId("eq21.0", minus, "u") + "_A", two * set.sMinus,
                                   antiBracket(set.sMinus, set.unit)));
  return out;
}

std::vector<CheckResult> verifyTwoParticle(const SpinSet& a, const SpinSet& b) {
  if (a.particle == b.particle)
    throw SemanticError("two-particle check needs distinct particle indices, got " + std::to_string(a.particle) +
                        " twice");
  auto out = closure(a, kTwoParticle, "eq37", a.label());
  auto second = closure(b, kTwoParticle, "eq37", b.label());
  out.insert(out.end(), second.begin(), second.end());
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      out.push_back(comparePolynomials(kTwoParticle,
                                       pairId("eq38", a.label() + std::to_string(i), b.label() + std::to_string(j)), {},
                                       poissonBracket(a.component(i), b.component(j))));
  return out;
}

PrintedTwoParticleSet makePrintedTwoParticleSet(unsigned particle) {
  const auto x = PhasePolynomial::variable(CanonicalVariable::x(particle));
  const auto y = PhasePolynomial::variable(CanonicalVariable::y(particle));
  const auto px = PhasePolynomial::variable(CanonicalVariable::px(particle));
  const auto py = PhasePolynomial::variable(CanonicalVariable::py(particle));
  PrintedTwoParticleSet s;
  s.particle = particle;
  s.s1 = half() * (x * y + px * py);
  s.s2 = quarter() * (x * x - y * y + px * px - py * py);
  s.s3 = half() * (x * py + y * px);
  return s;
}

const PhasePolynomial& PrintedTwoParticleSet::component(int i) const {
  switch (i) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::out_of_range("spin component index must be 1, 2 or 3");
  }
}

std::vector<CheckResult> verifyPrintedTwoParticleListing() {
  auto out = closure(makePrintedTwoParticleSet(1), kPrintedListing, "eq36/37", "S");
  auto second = closure(makePrintedTwoParticleSet(2), kPrintedListing, "eq36/37", "R");
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

}  // namespace spinlab
