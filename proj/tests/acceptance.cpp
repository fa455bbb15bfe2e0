// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"

#include "oracles.h"
#include "spinlab/audit.h"
#include "spinlab/cli.h"
#include "spinlab/dynamics.h"
#include "spinlab/expr_parser.h"
#include "spinlab/operator_matrix.h"
#include "spinlab/spectrum.h"
#include "spinlab/spin_functions.h"

namespace {

using namespace spinlab;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

// Spin functions written out from the coordinate formulas, independent of makeSpinSet.
struct TextSpin {
  PhasePolynomial s[4];  // S0..S3
};

TextSpin textSpin(unsigned particle) {
  const std::string p = std::to_string(particle);
  auto sub = [&](std::string t) {
    for (std::size_t at = 0; (at = t.find('#', at)) != std::string::npos;) t.replace(at, 1, p);
    return parse(t);
  };
  TextSpin r;
  r.s[0] = sub("1/2*k*x#^2 + 1/2*k*y#^2 + 1/2*k^-1*px#^2 + 1/2*k^-1*py#^2");
  r.s[1] = sub("1/4*k*x#^2 - 1/4*k*y#^2 + 1/4*k^-1*px#^2 - 1/4*k^-1*py#^2");
  r.s[2] = sub("1/2*k*x#*y# + 1/2*k^-1*px#*py#");
  r.s[3] = sub("1/2*x#*py# - 1/2*y#*px#");
  return r;
}

PhasePolynomial epsilonSum(const TextSpin& t, int i, int j) {
  PhasePolynomial out;
  for (int k = 1; k <= 3; ++k)
    if (const int e = leviCivita(i, j, k)) out += PhasePolynomial(GaussianRational(e)) * t.s[k];
  return out;
}

bool allVerified(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Verified; });
}

Outcome closure() {
  Outcome o;
  const TextSpin a = textSpin(1), b = textSpin(2);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const std::string ij = std::to_string(i) + std::to_string(j);
      o.require(poissonBracket(a.s[i], a.s[j]) == epsilonSum(a, i, j), "{S,S}" + ij);
      o.require(poissonBracket(b.s[i], b.s[j]) == epsilonSum(b, i, j), "{R,R}" + ij);
      o.require(poissonBracket(a.s[i], b.s[j]).isZero(), "{S,R}" + ij);
    }
  const auto checks = verifyTwoParticle(makeSpinSet(1), makeSpinSet(2));
  o.require(checks.size() == 27 && allVerified(checks), "library two-particle check");
  const SpinSet built = makeSpinSet(1);
  o.require(built.s0 == a.s[0] && built.s1 == a.s[1] && built.s2 == a.s[2] && built.s3 == a.s[3],
            "built set differs from coordinate formulas");
  if (o.pass) o.detail = "27 bracket pairs exact with symbolic kappa";
  return o;
}

Outcome casimir() {
  Outcome o;
  const TextSpin t = textSpin(1);
  const PhasePolynomial sq = t.s[1] * t.s[1] + t.s[2] * t.s[2] + t.s[3] * t.s[3];
  const PhasePolynomial quarter(GaussianRational(rational(1, 4)));
  o.require((sq - quarter * t.s[0] * t.s[0]).isZero(), "S^2 - S0^2/4");
  const PhasePolynomial I = PhasePolynomial::imaginaryUnit();
  const PhasePolynomial plus = t.s[1] + I * t.s[2], minus = t.s[1] - I * t.s[2];
  o.require((plus * minus - (sq - t.s[3] * t.s[3])).isZero(), "N - (S^2 - S3^2)");
  for (int i = 1; i <= 3; ++i) {
    o.require(poissonBracket(t.s[0], t.s[i]).isZero(), "{S0,S" + std::to_string(i) + "}");
    o.require(poissonBracket(sq, t.s[i]).isZero(), "{S^2,S" + std::to_string(i) + "}");
  }
  o.require(allVerified(verifyCasimir(makeSpinSet(1))), "library Casimir checks");
  if (o.pass) o.detail = "all identities exact";
  return o;
}

Outcome antiBrackets(const AuditReport& report) {
  Outcome o;
  const TextSpin t = textSpin(1);
  const PhasePolynomial I = PhasePolynomial::imaginaryUnit();
  const PhasePolynomial plus = t.s[1] + I * t.s[2], minus = t.s[1] - I * t.s[2];
  const PhasePolynomial u = parse("x1*px1 + y1*py1");
  const PhasePolynomial two(GaussianRational(2));
  o.require(antiBracket(plus, minus) == u, "{S+,S-}_A = u");
  o.require(antiBracket(plus, plus).isZero() && antiBracket(minus, minus).isZero(), "{S+-,S+-}_A = 0");
  o.require(antiBracket(plus, u) == two * plus, "{S+,u}_A = 2S+");
  o.require(antiBracket(minus, u) == two * minus, "{S-,u}_A = 2S-");
  o.require(poissonBracket(plus, minus) == PhasePolynomial(GaussianRational(0, -2)) * t.s[3], "{S+,S-} = -2iS3");
  bool flagged = false;
  for (const auto& e : report.entries)
    if (e.claimId == "eq19a:{S+,S-}") flagged = e.status == CheckStatus::Discrepant;
  o.require(flagged, "audit entry for {S+,S-} not DISCREPANT");
  if (o.pass) o.detail = "anti-brackets exact; {S+,S-} = -2i S3 flagged in audit";
  return o;
}

double endpointError(const PhasePolynomial& H, const SpinSet& set, std::size_t steps, double omega1) {
  const double period = 2 * std::numbers::pi / omega1;
  const auto traj = integrateFlow(H, {1.0, 0.3, -0.2, 0.5}, period / static_cast<double>(steps), steps, set);
  const auto& s0 = traj.sValues.front();
  const auto& s1 = traj.sValues.back();
  const auto ref = closedFormPrecession(s0[0], s0[1], s0[2], omega1, traj.times.back());
  return std::max({std::abs(s1[0] - ref.s1), std::abs(s1[1] - ref.s2), std::abs(s1[2] - ref.s3)});
}

Outcome dynamics() {
  Outcome o;
  const PhysicalParams params;
  const SpinSet set = makeSpinSet(1);
  const double w = params.omega1();
  const PhasePolynomial H = hamiltonian(params, set);
  const PhasePolynomial W(GaussianRational(params.exactOmega1()));
  const PhasePolynomial s1 = substituteKappa(set.s1, 1), s2 = substituteKappa(set.s2, 1),
                        s3 = substituteKappa(set.s3, 1);
  o.require(poissonBracket(s1, H) == W * s2, "{S1,H}");
  o.require(poissonBracket(s2, H) == -(W * s1), "{S2,H}");
  o.require(poissonBracket(s3, H).isZero(), "{S3,H}");
  const auto vec = verifyVectorForm(params, set);
  o.require(vec.size() == 3 && allVerified(vec), "vector form");

  const double period = 2 * std::numbers::pi / w;
  const auto steps = static_cast<std::size_t>(std::ceil(period / 1e-3));
  const PlanarState start{1.0, 0.3, -0.2, 0.5};
  const auto traj = integrateFlow(H, start, period / static_cast<double>(steps), steps, set);
  const auto& s0 = traj.sValues.front();
  const double scale = std::max(1.0, std::hypot(s0[0], s0[1], s0[2]));
  double dev = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto ref = closedFormPrecession(s0[0], s0[1], s0[2], w, traj.times[k]);
    const auto& s = traj.sValues[k];
    dev = std::max({dev, std::abs(s[0] - ref.s1), std::abs(s[1] - ref.s2), std::abs(s[2] - ref.s3)});
  }
  o.require(dev / scale <= 1e-7, "closed-form deviation " + std::to_string(dev / scale));
  const auto drift = conservationDrift(traj);
  o.require(drift.s3 <= 1e-8 && drift.s0 <= 1e-8, "conservation drift");
  const double order = std::log2(endpointError(H, set, 32, w) / endpointError(H, set, 64, w));
  o.require(order >= 3.8, "RK4 order " + std::to_string(order));
  if (o.pass) {
    std::ostringstream d;
    d << "rel deviation " << dev / scale << ", drift " << std::max(drift.s3, drift.s0) << ", order " << order;
    o.detail = d.str();
  }
  return o;
}

Outcome operators() {
  Outcome o;
  const GaussianRational I = GaussianRational::imaginaryUnit();
  const auto S = spinOperators(SpinConvention::Standard);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      OperatorMatrix expected(2, 2);
      for (int c = 1; c <= 3; ++c)
        if (const int e = leviCivita(a, b, c)) expected = expected + S[c - 1].scaled(I * GaussianRational(e), 1);
      const auto comm = naiveProduct(S[a - 1], S[b - 1]) - naiveProduct(S[b - 1], S[a - 1]);
      o.require(comm == expected && commutator(S[a - 1], S[b - 1]) == comm, "standard [S,S]");
    }
  const auto [pp, pm] = ladderMatrices(LadderSource::PaperEq24);
  o.require(pp.dim() == 2 && !pp(1, 0).isZero() && pp(0, 0).isZero() && pp(0, 1).isZero() && pp(1, 1).isZero(),
            "S+ shape");
  o.require(pm == pp.adjoint(), "S- = adjoint(S+)");
  const auto comm = naiveProduct(pp, pm) - naiveProduct(pm, pp);
  o.require(comm == S[2].scaled(GaussianRational(rational(-1, 2)), 1), "[S+,S-] = -(hbar/2) S3");
  const auto anti = naiveProduct(pp, pm) + naiveProduct(pm, pp);
  o.require(anti == OperatorMatrix::identity(2, 2).scaled(GaussianRational(rational(1, 4))), "{S+,S-} = hbar^2/4");
  const auto n = numberOperator(pp, pm);
  o.require(n.matrix == naiveProduct(pp, pm), "N = S+S-");
  o.require(n.spectrum.size() == 2 && n.spectrum[0].value.isZero() && !n.spectrum[1].value.isZero() &&
                n.spectrum[1].basis.size() == 1,
            "N spectrum {0, c} with 1-dim nonzero eigenspace");
  if (o.pass) o.detail = "standard algebra exact; printed ladders give -(hbar/2)S3 and (hbar^2/4)1";
  return o;
}

Outcome exclusion() {
  Outcome o;
  const ExactVector expected{0, 1, -1, 0};
  std::vector<std::vector<std::complex<double>>> normed;
  for (auto src : {LadderSource::FromSFunctions, LadderSource::PaperEq24}) {
    const auto r = exclusionSinglet(src);
    o.require(r.jointBasis.size() == 2, "joint eigenspace dimension for " + toString(src));
    o.require(fixPhase(r.singlet) == expected, "singlet for " + toString(src));
    const auto p = exchangeOperator().apply(r.singlet);
    bool antisym = true;
    for (std::size_t k = 0; k < 4; ++k) antisym = antisym && p[k] == -r.singlet[k];
    o.require(antisym, "exchange antisymmetry");
    normed.push_back(r.singletNormalized);
  }
  const double h = 1 / std::sqrt(2.0);
  for (const auto& v : normed) {
    o.require(v.size() == 4, "normalized size");
    if (v.size() == 4)
      o.require(std::abs(v[0]) < 1e-15 && std::abs(v[1] - h) < 1e-15 && std::abs(v[2] + h) < 1e-15 &&
                    std::abs(v[3]) < 1e-15,
                "normalized singlet");
  }
  o.require(normed.size() == 2 && normed[0] == normed[1], "convention independence");
  if (o.pass) o.detail = "dimension 2, singlet (0,1,-1,0)/sqrt2 under both sources";
  return o;
}

Outcome spectrum() {
  Outcome o;
  OscillatorConfig c;  // m = omega = hbar = 1, L = 8, n = 128
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = numericSpectrum(c);
  const auto study = groundStateConvergence(c, {64, 128});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(!r.lambdas.empty() && std::abs(r.lambdas[0] - 1.0) <= 1e-2, "lowest lambda");
  const auto clusters = clusterDegeneracies(r.lambdas, 1e-2);
  o.require(clusters.size() >= 3 && clusters[0] == 1 && clusters[1] == 2 && clusters[2] == 3, "clusters (1,2,3)");
  o.require(std::all_of(r.lambdas.begin(), r.lambdas.end(), [](double l) { return l > 0; }), "positivity");
  o.require(study.orders.size() == 1 && study.orders[0] >= 1.8, "grid convergence order");
  o.require(seconds <= 30, "runtime");
  std::ostringstream d;
  d << "lambda0 " << r.lambdas.at(0) << ", order " << (study.orders.empty() ? 0.0 : study.orders[0]) << ", "
    << seconds << " s";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome parser() {
  Outcome o;
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int n = 0; n < 200; ++n) {
    const auto f = oracle::randomPolynomial(rng, 4, 2, 6);
    if (parse(print(f)) != f) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " round-trip failures");
  std::ifstream in(SPINLAB_DATA_DIR "/spin_functions.spl");
  std::stringstream text;
  text << in.rdbuf();
  const auto defs = parseDefinitions(text.str());
  const SpinSet s = makeSpinSet(1);
  const std::pair<const char*, const PhasePolynomial*> expected[] = {
      {"S1", &s.s1}, {"S2", &s.s2},         {"S3", &s.s3},          {"S0", &s.s0},     {"Ssq", &s.sSquared},
      {"Splus", &s.sPlus}, {"Sminus", &s.sMinus}, {"N", &s.n}, {"u", &s.unit}};
  for (const auto& [name, poly] : expected) o.require(lookup(defs, name) == *poly, std::string("shipped ") + name);
  if (o.pass) o.detail = "200 round trips; shipped file equals built set";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto run = [&] {
    std::ostringstream out, err;
    const int code = runCli({"audit"}, out, err);
    o.require(code == 0, "audit exit code");
    auto j = nlohmann::json::parse(out.str());
    j.erase("timestamp");
    j.erase("toolVersion");
    return j.dump();
  };
  const std::string a = run(), b = run();
  o.require(a == b, "reports differ");
  if (o.pass) o.detail = "two runs identical (" + std::to_string(a.size()) + " bytes)";
  return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  const AuditReport report = runAudit(RunConfig{});
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"su(2) closure", closure},
      {"Casimir identities", casimir},
      {"anti-bracket suite", [&] { return antiBrackets(report); }},
      {"dynamics", dynamics},
      {"operator audit", operators},
      {"exclusion", exclusion},
      {"spectrum", spectrum},
      {"parser", parser},
      {"audit determinism", determinism},
  };
  bool all = true;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    const Outcome r = guarded(check);
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << index++ << " (" << name << "): " << r.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
