#include "spinlab/audit.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "spinlab/dynamics.h"
#include "spinlab/expr_parser.h"
#include "spinlab/spectrum.h"
#include "spinlab/version.h"

namespace spinlab {

namespace {

const std::string kClassical = "classical";
const std::string kTwoParticle = "two-particle";
const std::string kPrinted = "two-particle-printed";
const std::string kDynamics = "dynamics";
const std::string kOperators = "operators";
const std::string kExclusion = "exclusion";
const std::string kSpectrum = "spectrum";

std::string scalarText(const GaussianRational& g) { return print(PhasePolynomial(g)); }

std::string hbarSuffix(int p) {
  if (p == 0) return "";
  return " hbar^" + std::to_string(p);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// r with to = r·from entry-wise, if such an r exists and from is nonzero.
std::optional<GaussianRational> entrywiseRatio(const std::vector<GaussianRational>& from,
                                               const std::vector<GaussianRational>& to) {
  if (from.size() != to.size()) return std::nullopt;
  std::size_t pivot = from.size();
  for (std::size_t i = 0; i < from.size(); ++i)
    if (!from[i].isZero()) {
      pivot = i;
      break;
    }
  if (pivot == from.size() || to[pivot].isZero()) return std::nullopt;
  const GaussianRational r = to[pivot] / from[pivot];
  for (std::size_t i = 0; i < from.size(); ++i)
    if (!(from[i] * r == to[i])) return std::nullopt;
  return r;
}

std::string ratioNote(const GaussianRational& r, int hbarShift) {
  return "computed = (" + scalarText(r) + ")" + hbarSuffix(hbarShift) + " * claimed";
}

std::string joinNotes(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "; " + b;
}

bool allZero(const std::vector<GaussianRational>& v) {
  for (const auto& g : v)
    if (!g.isZero()) return false;
  return true;
}

CheckResult make(std::string section, std::string id, bool ok, std::string claimed, std::string computed,
                 std::string note = {}) {
  return {std::move(section), std::move(id), ok ? CheckStatus::Verified : CheckStatus::Discrepant,
          std::move(claimed), std::move(computed), std::move(note)};
}

GradedVector ket(std::size_t dim, std::size_t index, int hbarPower = 0) {
  GradedVector v{ExactVector(dim, GaussianRational(0)), hbarPower};
  v.values[index] = 1;
  return v;
}

GradedVector act(const OperatorMatrix& m, const GradedVector& v) {
  return {m.apply(v.values), m.hbarPower() + v.hbarPower};
}

GradedVector zeroVector(std::size_t dim) { return {ExactVector(dim, GaussianRational(0)), 0}; }

OperatorMatrix zeroMatrix(std::size_t dim, int hbarPower) { return OperatorMatrix(dim, hbarPower); }

std::string setText(const std::vector<GaussianRational>& values, int hbarPower) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + scalarText(values[i]);
  return s + "}" + hbarSuffix(hbarPower);
}

std::string vectorText(const ExactVector& v) { return toString(GradedVector{v, 0}); }

// -- operators ---------------------------------------------------------------

void commutationChecks(std::vector<CheckResult>& out) {
  const GaussianRational i = GaussianRational::imaginaryUnit();
  for (SpinConvention conv : {SpinConvention::Standard, SpinConvention::PaperEq22}) {
    const auto S = spinOperators(conv);
    const std::string tag = "eq22.a[" + toString(conv) + "]:";
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        OperatorMatrix claimed = zeroMatrix(2, S[0].hbarPower() + 1);
        for (int k = 1; k <= 3; ++k)
          if (const int e = leviCivita(a, b, k); e != 0) claimed = claimed + S[k - 1].scaled(i * GaussianRational(e), 1);
        out.push_back(compareOperators(kOperators, tag + "[S" + std::to_string(a) + ",S" + std::to_string(b) + "]",
                                       claimed, commutator(S[a - 1], S[b - 1])));
      }
  }
  const auto S = spinOperators(SpinConvention::Standard);
  out.push_back(compareOperators(kOperators, "eq22.a[STANDARD]:S1^2+S2^2+S3^2",
                                 OperatorMatrix::identity(2, 2).scaled(GaussianRational(rational(3, 4))),
                                 S[0] * S[0] + S[1] * S[1] + S[2] * S[2], "s(s+1) with s = 1/2"));
}

void ladderShapeChecks(std::vector<CheckResult>& out) {
  const GaussianRational i = GaussianRational::imaginaryUnit();
  const auto [printedPlus, printedMinus] = ladderMatrices(LadderSource::PaperEq24);
  for (SpinConvention conv : {SpinConvention::Standard, SpinConvention::PaperEq22}) {
    const auto S = spinOperators(conv);
    const std::string tag = "[" + toString(conv) + "]:";
    out.push_back(compareOperators(kOperators, "eq24" + tag + "S+=S1+iS2", printedPlus, S[0] + S[1].scaled(i)));
    out.push_back(compareOperators(kOperators, "eq25" + tag + "S-=S1-iS2", printedMinus, S[0] - S[1].scaled(i)));
  }
  for (LadderSource src : {LadderSource::FromSFunctions, LadderSource::PaperEq24}) {
    const auto [plus, minus] = ladderMatrices(src);
    const std::string tag = "[" + toString(src) + "]:";
    out.push_back(compareOperators(kOperators, "eq25" + tag + "S-=adjoint(S+)", minus, plus.adjoint()));
    out.push_back(compareOperators(kOperators, "eq29" + tag + "S+S+=0", zeroMatrix(2, 2), plus * plus));
  }
}

void algebraChecks(std::vector<CheckResult>& out) {
  const OperatorMatrix s3 = spinOperators(SpinConvention::Standard)[2];
  for (LadderSource src : {LadderSource::PaperEq24, LadderSource::FromSFunctions}) {
    const auto [plus, minus] = ladderMatrices(src);
    const std::string tag = "[" + toString(src) + "]:";
    out.push_back(compareOperators(kOperators, "eq26" + tag + "[S+,S-]", s3.scaled(1, 1), commutator(plus, minus)));
    out.push_back(compareOperators(kOperators, "eq26" + tag + "[S+,S+]", zeroMatrix(2, 2), commutator(plus, plus)));
    out.push_back(compareOperators(kOperators, "eq26" + tag + "[S-,S-]", zeroMatrix(2, 2), commutator(minus, minus)));
    out.push_back(compareOperators(kOperators, "eq27" + tag + "{S+,S-}_A", OperatorMatrix::identity(2, 1),
                                   antiCommutator(plus, minus)));
    out.push_back(
        compareOperators(kOperators, "eq27" + tag + "{S+,S+}_A", zeroMatrix(2, 2), antiCommutator(plus, plus)));
    out.push_back(
        compareOperators(kOperators, "eq27" + tag + "{S-,S-}_A", zeroMatrix(2, 2), antiCommutator(minus, minus)));
  }
}

// Printed state actions read in the natural ħ unit of the operator.
void basisActionChecks(std::vector<CheckResult>& out) {
  const GradedVector k0 = ket(2, 0);
  const GradedVector k1 = ket(2, 1);
  for (LadderSource src : {LadderSource::PaperEq24, LadderSource::FromSFunctions}) {
    const auto [plus, minus] = ladderMatrices(src);
    const std::string tag = "eq29[" + toString(src) + "]:";
    struct Action {
      std::string name;
      const OperatorMatrix* op;
      const GradedVector* in;
      GradedVector claimed;
    };
    const std::vector<Action> actions = {
        {"S+|0>=|1>", &plus, &k0, ket(2, 1, 1)},
        {"S+|1>=0", &plus, &k1, zeroVector(2)},
        {"S-|0>=0", &minus, &k0, zeroVector(2)},
        {"S-|1>=|0>", &minus, &k1, ket(2, 0, 1)},
    };
    bool shapeOk = true;
    std::string shapeText;
    for (const auto& a : actions) {
      const GradedVector computed = act(*a.op, *a.in);
      out.push_back(compareVectors(kOperators, tag + a.name, a.claimed, computed));
      const bool claimedZero = allZero(a.claimed.values);
      const bool computedZero = allZero(computed.values);
      shapeOk = shapeOk && (claimedZero ? computedZero : entrywiseRatio(a.claimed.values, computed.values).has_value());
      shapeText += (shapeText.empty() ? "" : "; ") + a.name.substr(0, 5) + " -> " + toString(computed);
    }
    out.push_back(make(kOperators, tag + "structure", shapeOk, "S+ raises |0> to |1>, S- lowers |1> to |0>",
                       shapeText, "proportionality only; normalization is checked per action"));
  }
}

void numberOperatorChecks(std::vector<CheckResult>& out) {
  const auto S = spinOperators(SpinConvention::Standard);
  const GradedVector k0 = ket(2, 0);
  const GradedVector k1 = ket(2, 1);
  for (LadderSource src : {LadderSource::PaperEq24, LadderSource::FromSFunctions}) {
    const auto [plus, minus] = ladderMatrices(src);
    const auto number = numberOperator(plus, minus);
    const OperatorMatrix& N = number.matrix;
    const std::string tag = "[" + toString(src) + "]:";
    out.push_back(compareOperators(kOperators, "eq30" + tag + "N=S+S-", OperatorMatrix::diagonal({0, 1}, 2), N));
    out.push_back(compareVectors(kOperators, "eq31" + tag + "N|0>=0", zeroVector(2), act(N, k0)));
    out.push_back(compareVectors(kOperators, "eq31" + tag + "N|1>=|1>", ket(2, 1, 2), act(N, k1)));

    std::vector<GaussianRational> values;
    for (const auto& es : number.spectrum) values.push_back(es.value);
    const std::vector<GaussianRational> claimedValues = {0, 1};
    const bool spectrumOk = values == claimedValues;
    std::optional<GaussianRational> scale;
    if (!spectrumOk) scale = entrywiseRatio(claimedValues, values);
    out.push_back(make(kOperators, "eq31" + tag + "spectrum", spectrumOk, setText(claimedValues, 2),
                       setText(values, N.hbarPower()), scale ? ratioNote(*scale, 0) : ""));

    // {0, nonzero} with a one-dimensional nonzero eigenspace.
    bool shapeOk = number.spectrum.size() == 2 && number.spectrum[0].value.isZero();
    std::string text;
    for (const auto& es : number.spectrum) {
      if (!text.empty()) text += "; ";
      text += "level " + scalarText(es.value) + hbarSuffix(N.hbarPower()) + " span{";
      for (std::size_t b = 0; b < es.basis.size(); ++b) text += (b ? ", " : "") + vectorText(fixPhase(es.basis[b]));
      text += "}";
      if (!es.value.isZero()) shapeOk = shapeOk && es.basis.size() == 1;
    }
    out.push_back(make(kOperators, "eq31" + tag + "spectrum-structure", shapeOk,
                       "levels {0, n} with a one-dimensional level-n eigenspace", text));

    const OperatorMatrix squared = S[0] * S[0] + S[1] * S[1] + S[2] * S[2];
    out.push_back(compareOperators(kOperators, "eq32" + tag + "N=S1^2+S2^2", S[0] * S[0] + S[1] * S[1], N));
    out.push_back(compareOperators(kOperators, "eq32" + tag + "N=S^2-S3^2", squared - S[2] * S[2], N));
  }
}

void productSpaceChecks(std::vector<CheckResult>& out) {
  const OperatorMatrix claimedZ = OperatorMatrix::diagonal({2, 0, 0, -2}, 1);
  const OperatorMatrix z = totalSpinZ();
  out.push_back(compareOperators(kOperators, "eq39:S3+R3", claimedZ, z));
  out.push_back(compareStructure(kOperators, "eq39:S3+R3 structure", claimedZ, z));

  const OperatorMatrix claimedN = OperatorMatrix::diagonal({0, 1, 1, 2}, 2);
  for (LadderSource src : {LadderSource::PaperEq24, LadderSource::FromSFunctions}) {
    const OperatorMatrix n = totalNumber(src);
    const std::string tag = "eq39[" + toString(src) + "]:";
    out.push_back(compareOperators(kOperators, tag + "N_total", claimedN, n));
    out.push_back(compareStructure(kOperators, tag + "N_total structure", claimedN, n));
    std::vector<GaussianRational> mult;
    for (const auto& es : exactEigen(n)) mult.push_back(GaussianRational(static_cast<long>(es.basis.size())));
    const std::vector<GaussianRational> claimedMult = {1, 2, 1};
    out.push_back(make(kOperators, tag + "N_total multiplicities", mult == claimedMult, setText(claimedMult, 0),
                       setText(mult, 0), "eigenspace dimensions in ascending level order"));
  }

  const OperatorMatrix s3 = spinOperators(SpinConvention::Standard)[2];
  const GaussianRational half(rational(1, 2));
  out.push_back(compareOperators(kOperators, "eq40:S3 on |s>|r>", OperatorMatrix::diagonal({half, half, -half, -half}, 1),
                                 embed(s3, 1)));
  out.push_back(compareOperators(kOperators, "eq40:R3 on |s>|r>", OperatorMatrix::diagonal({half, -half, half, -half}, 1),
                                 embed(s3, 2)));
}

}  // namespace

const std::vector<std::string>& auditSections() {
  static const std::vector<std::string> sections = {kClassical, kTwoParticle, kPrinted, kDynamics,
                                                    kOperators, kExclusion,   kSpectrum};
  return sections;
}

AuditSummary AuditReport::summary() const {
  AuditSummary s;
  for (const auto& e : entries) (e.status == CheckStatus::Verified ? s.verified : s.discrepant)++;
  return s;
}

std::vector<CheckResult> AuditReport::section(const std::string& name) const {
  std::vector<CheckResult> out;
  for (const auto& e : entries)
    if (e.section == name) out.push_back(e);
  return out;
}

std::string toString(const GradedVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.values.size(); ++i) s += (i ? ", " : "") + scalarText(v.values[i]);
  return s + ")" + hbarSuffix(allZero(v.values) ? 0 : v.hbarPower);
}

CheckResult compareOperators(std::string section, std::string claimId, const OperatorMatrix& claimed,
                             const OperatorMatrix& computed, std::string note) {
  const bool ok = claimed.dim() == computed.dim() && claimed == computed;
  if (!ok) {
    if (const auto r = entrywiseRatio(claimed.entries(), computed.entries()))
      note = joinNotes(note, ratioNote(*r, computed.hbarPower() - claimed.hbarPower()));
  }
  return make(std::move(section), std::move(claimId), ok, claimed.toString(), computed.toString(), std::move(note));
}

CheckResult compareStructure(std::string section, std::string claimId, const OperatorMatrix& claimed,
                             const OperatorMatrix& computed) {
  const bool bothZero = claimed.isZero() && computed.isZero();
  const auto r = entrywiseRatio(claimed.entries(), computed.entries());
  std::string note = "proportionality only";
  if (r) note = joinNotes(note, ratioNote(*r, computed.hbarPower() - claimed.hbarPower()));
  return make(std::move(section), std::move(claimId), bothZero || r.has_value(), claimed.toString(),
              computed.toString(), std::move(note));
}

CheckResult compareVectors(std::string section, std::string claimId, const GradedVector& claimed,
                           const GradedVector& computed, std::string note) {
  const bool zero = allZero(claimed.values) && allZero(computed.values);
  const bool ok = claimed.values == computed.values && (zero || claimed.hbarPower == computed.hbarPower);
  if (!ok) {
    if (const auto r = entrywiseRatio(claimed.values, computed.values))
      note = joinNotes(note, ratioNote(*r, computed.hbarPower - claimed.hbarPower));
  }
  return make(std::move(section), std::move(claimId), ok, toString(claimed), toString(computed), std::move(note));
}

std::vector<CheckResult> classicalChecks() {
  const SpinSet s = makeSpinSet(1);
  std::vector<CheckResult> out = verifySu2(s);
  for (auto* group : {verifyCasimir, verifyLadder})
    for (auto& c : group(s)) out.push_back(std::move(c));
  return out;
}

std::vector<CheckResult> twoParticleChecks() { return verifyTwoParticle(makeSpinSet(1), makeSpinSet(2)); }

std::vector<CheckResult> dynamicsChecks(const RunConfig& config) {
  const PhysicalParams& params = config.physics;
  params.validate();
  const SpinSet set = makeSpinSet(1);
  std::vector<CheckResult> out = verifyEquationsOfMotion(params, set);
  for (auto& c : verifyVectorForm(params, set)) out.push_back(std::move(c));

  const double w1 = params.omega1();
  const double period = w1 != 0 ? 2 * std::numbers::pi / std::abs(w1) : 2 * std::numbers::pi;
  const PhasePolynomial H = hamiltonian(params, set);
  const auto steps = static_cast<std::size_t>(std::ceil(period / config.dt - 1e-9));
  const Trajectory traj = integrateFlow(H, config.initial, period / static_cast<double>(steps), steps, set,
                                        params.kappaValue);
  const auto& s0 = traj.sValues.front();
  const double scale = std::max(1.0, std::sqrt(s0[0] * s0[0] + s0[1] * s0[1] + s0[2] * s0[2]));
  const double deviation = maxClosedFormDeviation(traj, w1);
  out.push_back(make(kDynamics, "eq13:rk4-vs-closed-form", deviation <= 1e-7 * scale,
                     "max |S_i - closed form| <= " + scientific(1e-7 * scale), scientific(deviation),
                     std::to_string(steps) + " RK4 steps over one period"));
  const ConservationDrift drift = conservationDrift(traj);
  out.push_back(make(kDynamics, "eq12:S3-conservation", drift.s3 <= 1e-8, "relative drift <= 1.000e-08",
                     scientific(drift.s3)));
  out.push_back(make(kDynamics, "eq12:S0-conservation", drift.s0 <= 1e-8, "relative drift <= 1.000e-08",
                     scientific(drift.s0)));

  if (w1 != 0) {
    // Order from coarse grids where the truncation error is well above roundoff.
    double errors[2];
    const std::size_t coarse[2] = {32, 64};
    for (int j = 0; j < 2; ++j) {
      const Trajectory t = integrateFlow(H, config.initial, period / static_cast<double>(coarse[j]), coarse[j], set,
                                         params.kappaValue);
      errors[j] = maxClosedFormDeviation(t, w1);
    }
    if (errors[1] > 0) {
      const double order = std::log2(errors[0] / errors[1]);
      out.push_back(make(kDynamics, "eq13:rk4-order", order >= 3.8, "observed order >= 3.80", fixed(order, 2),
                         "one period with 32 and 64 steps"));
    }
  }
  return out;
}

std::vector<CheckResult> operatorChecks() {
  std::vector<CheckResult> out;
  commutationChecks(out);
  ladderShapeChecks(out);
  algebraChecks(out);
  basisActionChecks(out);
  numberOperatorChecks(out);
  productSpaceChecks(out);
  return out;
}

std::vector<CheckResult> exclusionChecks() {
  std::vector<CheckResult> out;
  const ExactVector claimedSinglet = {0, 1, -1, 0};
  const ExactVector claimedPartner = {0, 1, 1, 0};
  std::vector<ExactVector> singlets;
  for (LadderSource src : {LadderSource::FromSFunctions, LadderSource::PaperEq24}) {
    const ExclusionResult r = exclusionSinglet(src);
    const std::string tag = "[" + toString(src) + "]:";
    out.push_back(make(kExclusion, "eq40" + tag + "joint eigenspace dimension", r.jointBasis.size() == 2, "2",
                       std::to_string(r.jointBasis.size()),
                       "S3+R3 at 0 and N_total at " + scalarText(r.numberLevel) + " hbar^2"));
    out.push_back(make(kExclusion, "eq43" + tag + "singlet", r.singlet == claimedSinglet, vectorText(claimedSinglet),
                       vectorText(r.singlet), "unnormalized, first nonzero component fixed to 1"));

    const ExactVector exchanged = exchangeOperator().apply(r.singlet);
    ExactVector negated;
    for (const auto& g : r.singlet) negated.push_back(-g);
    out.push_back(make(kExclusion, "eq42" + tag + "P psi=-psi", exchanged == negated, vectorText(negated),
                       vectorText(exchanged)));
    const ExactVector z = totalSpinZ().apply(r.singlet);
    out.push_back(make(kExclusion, "eq42" + tag + "(S3+R3) psi=0", allZero(z), vectorText(ExactVector(4, 0)),
                       vectorText(z)));
    out.push_back(make(kExclusion, "eq41" + tag + "psi2 rejected",
                       fixPhase(r.symmetricPartner) == claimedPartner && r.rejectionReason == "exchange-symmetric",
                       vectorText(claimedPartner) + " exchange-symmetric",
                       vectorText(fixPhase(r.symmetricPartner)) + " " + r.rejectionReason));
    singlets.push_back(r.singlet);
  }
  out.push_back(make(kExclusion, "eq43:convention independence", singlets[0] == singlets[1],
                     vectorText(singlets[0]), vectorText(singlets[1]),
                     "FROM_S_FUNCTIONS vs PAPER_EQ24 singlet direction"));
  return out;
}

std::vector<CheckResult> spectrumChecks(const OscillatorConfig& config) {
  const SpectrumResult r = numericSpectrum(config);
  std::vector<CheckResult> out;
  const std::string grid = std::to_string(config.points) + "x" + std::to_string(config.points) + " grid, " + r.method;
  out.push_back(make(kSpectrum, "EB5:lowest lambda", std::abs(r.lambdas.front() - 1.0) <= 0.01, "1 (within 1%)",
                     fixed(r.lambdas.front(), 6), grid));

  std::string clusters;
  for (std::size_t c = 0; c < std::min<std::size_t>(3, r.degeneracies.size()); ++c)
    clusters += (c ? ", " : "") + std::to_string(r.degeneracies[c]);
  const bool clustersOk = r.degeneracies.size() >= 3 && r.degeneracies[0] == 1 && r.degeneracies[1] == 2 &&
                          r.degeneracies[2] == 3;
  out.push_back(make(kSpectrum, "EB5:degeneracies", clustersOk, "1, 2, 3", clusters,
                     "cluster tolerance " + fixed(config.clusterTol, 4)));

  const double lowest = *std::min_element(r.lambdas.begin(), r.lambdas.end());
  out.push_back(make(kSpectrum, "EB7:positivity", lowest > 0, "lambda > 0 for every level",
                     "min lambda = " + fixed(lowest, 6), std::to_string(r.lambdas.size()) + " levels"));
  return out;
}

AuditReport runAudit(const RunConfig& config) {
  config.physics.validate();
  config.spectrum.validate();
  const std::vector<std::function<std::vector<CheckResult>()>> groups = {
      classicalChecks,
      twoParticleChecks,
      verifyPrintedTwoParticleListing,
      [&] { return dynamicsChecks(config); },
      operatorChecks,
      exclusionChecks,
      [&] { return spectrumChecks(config.spectrum); },
  };
  std::vector<std::vector<CheckResult>> results(groups.size());
  std::vector<std::exception_ptr> failures(groups.size());
  const auto count = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t g = 0; g < count; ++g) {
    try {
      results[g] = groups[g]();
    } catch (...) {
      failures[g] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  AuditReport report;
  report.toolVersion = kToolVersion;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  report.timestamp = buf;
  for (auto& group : results)
    for (auto& c : group) report.entries.push_back(std::move(c));
  return report;
}

nlohmann::json toJson(const CheckResult& r) {
  return {{"section", r.section}, {"claimId", r.claimId}, {"status", toString(r.status)},
          {"claimed", r.claimed}, {"computed", r.computed}, {"note", r.note}};
}

nlohmann::json toJson(const AuditReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) entries.push_back(toJson(e));
  const AuditSummary s = r.summary();
  return {
      {"schemaVersion", r.schemaVersion},
      {"toolVersion", r.toolVersion},
      {"timestamp", r.timestamp},
      {"sections", auditSections()},
      {"summary", {{"total", r.entries.size()}, {"verified", s.verified}, {"discrepant", s.discrepant}}},
      {"entries", entries},
  };
}

namespace {
std::string cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}
}  // namespace

std::string toMarkdown(const AuditReport& r) {
  std::ostringstream md;
  const AuditSummary s = r.summary();
  md << "# spinlab audit report\n\n"
     << "- schema version: " << r.schemaVersion << "\n"
     << "- tool version: " << r.toolVersion << "\n"
     << "- timestamp: " << r.timestamp << "\n"
     << "- entries: " << r.entries.size() << " (" << s.verified << " VERIFIED, " << s.discrepant
     << " DISCREPANT)\n";
  for (const auto& name : auditSections()) {
    const auto entries = r.section(name);
    if (entries.empty()) continue;
    md << "\n## " << name << "\n\n| claim | status | claimed | computed | note |\n|---|---|---|---|---|\n";
    for (const auto& e : entries)
      md << "| `" << cell(e.claimId) << "` | " << toString(e.status) << " | `" << cell(e.claimed) << "` | `"
         << cell(e.computed) << "` | " << cell(e.note) << " |\n";
  }
  return md.str();
}

}  // namespace spinlab
