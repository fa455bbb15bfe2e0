#include "spinlab/cli.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "spinlab/audit.h"
#include "spinlab/config.h"
#include "spinlab/dynamics.h"
#include "spinlab/errors.h"
#include "spinlab/expr_parser.h"
#include "spinlab/operator_matrix.h"
#include "spinlab/spectrum.h"
#include "spinlab/version.h"

namespace spinlab {

namespace {

constexpr const char* kFooter = R"(Expressions: x, y, px, py with an optional particle index (x1, py2, ...),
'k' for the scale constant kappa, 'i' for the imaginary unit, integer and a/b
literals, + - * ^ and parentheses. Definition files hold one 'name := expr'
per line; '#' starts a comment.

Units default to e = m = c = 1, g = 2 and B3 = 1, so omega1 = 1.

Exit codes: 0 ok, 2 input or parse error, 3 semantic error (e.g. undefined
name), 4 numerical failure. DISCREPANT audit entries do not change the exit
code.

Config file (INI, every key optional, defaults shown):
)";

// Exact κ from "3", "-2/5" or "0.125".
mpq_class parseRationalLiteral(const std::string& text) {
  std::string s = text;
  if (const auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    s = s.substr(0, dot) + frac + "/1" + std::string(frac.size(), '0');
  }
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("--kappa expects an integer, a/b or a decimal, got '" + text + "'");
  q.canonicalize();
  return q;
}

struct Options {
  std::string configPath;
  std::string format;
  std::string outPath;
  std::string kappa;

  std::string bracketFile, lhs, rhs, mode = "poisson";
  std::optional<double> tEnd, dt;
  std::optional<std::size_t> points;
  std::string method;
};

class Command {
 public:
  Command(const Options& o, std::ostream& out, std::ostream& err) : opt_(o), out_(out), err_(err) {}

  RunConfig config() const {
    RunConfig cfg = opt_.configPath.empty() ? RunConfig{} : loadConfig(opt_.configPath);
    if (!opt_.kappa.empty()) cfg.physics.kappaValue = kappaValue().get_d();
    return cfg;
  }

  mpq_class kappaValue() const {
    const mpq_class k = parseRationalLiteral(opt_.kappa);
    if (sgn(k) <= 0) throw std::invalid_argument("--kappa must be positive");
    return k;
  }

  std::string format(const std::string& fallback, std::initializer_list<const char*> allowed,
                     const std::string& command) const {
    const std::string f = opt_.format.empty() ? fallback : opt_.format;
    for (const char* a : allowed)
      if (f == a) return f;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw std::invalid_argument("command '" + command + "' supports --format " + list + ", not '" + f + "'");
  }

  void emit(const std::function<void(std::ostream&)>& write) const {
    if (opt_.outPath.empty()) {
      write(out_);
      return;
    }
    std::ofstream file(opt_.outPath, std::ios::binary);
    if (!file) throw IoError(opt_.outPath + ": cannot open for writing");
    write(file);
    file.flush();
    if (!file) throw IoError(opt_.outPath + ": write failed");
  }

  // Human-facing side output goes to stdout only when the report itself does not.
  std::ostream& side() const { return opt_.outPath.empty() ? err_ : out_; }

  int audit() const {
    const std::string fmt = format("json", {"json", "markdown"}, "audit");
    const AuditReport report = runAudit(config());
    emit([&](std::ostream& os) {
      if (fmt == "json")
        os << toJson(report).dump(2) << '\n';
      else
        os << toMarkdown(report);
    });
    return kExitOk;
  }

  int bracket() const {
    const std::string fmt = format("text", {"text", "json"}, "bracket");
    std::ifstream in(opt_.bracketFile);
    if (!in) throw IoError(opt_.bracketFile + ": cannot open expression file");
    std::ostringstream text;
    text << in.rdbuf();
    const std::vector<Definition> defs = parseDefinitions(text.str());
    const PhasePolynomial& a = lookup(defs, opt_.lhs);
    const PhasePolynomial& b = lookup(defs, opt_.rhs);
    PhasePolynomial result = opt_.mode == "anti" ? antiBracket(a, b) : poissonBracket(a, b);
    if (!opt_.kappa.empty()) result = substituteKappa(result, kappaValue());
    emit([&](std::ostream& os) {
      if (fmt == "json")
        os << nlohmann::json{{"lhs", opt_.lhs}, {"rhs", opt_.rhs}, {"mode", opt_.mode}, {"result", print(result)}}
                  .dump(2)
           << '\n';
      else
        os << print(result) << '\n';
    });
    return kExitOk;
  }

  int simulate() const {
    format("csv", {"csv"}, "simulate");
    RunConfig cfg = config();
    if (opt_.tEnd) cfg.tEnd = *opt_.tEnd;
    if (opt_.dt) cfg.dt = *opt_.dt;
    if (!(cfg.dt > 0)) throw std::invalid_argument("--dt must be positive");
    if (opt_.tEnd && !(*opt_.tEnd >= 0)) throw std::invalid_argument("--t-end must be >= 0");
    cfg.physics.validate();

    const double tEnd = cfg.resolvedEndTime();
    const auto steps = static_cast<std::size_t>(std::ceil(tEnd / cfg.dt - 1e-9));
    const double step = steps > 0 ? tEnd / static_cast<double>(steps) : cfg.dt;
    const SpinSet set = makeSpinSet(1);
    const Trajectory traj =
        integrateFlow(hamiltonian(cfg.physics, set), cfg.initial, step, steps, set, cfg.physics.kappaValue);
    emit([&](std::ostream& os) { writeCsv(traj, os); });

    const ConservationDrift drift = conservationDrift(traj);
    std::ostream& s = side();
    const auto flags = s.flags();
    s << std::scientific << std::setprecision(3) << "summary: steps=" << steps << " dt=" << step
      << " tEnd=" << tEnd << " omega1=" << cfg.physics.omega1()
      << " maxClosedFormDeviation=" << maxClosedFormDeviation(traj, cfg.physics.omega1())
      << " driftS3=" << drift.s3 << " driftS0=" << drift.s0 << '\n';
    s.flags(flags);
    return kExitOk;
  }

  int spectrum() const {
    const std::string fmt = format("json", {"json", "csv"}, "spectrum");
    RunConfig cfg = config();
    if (opt_.points) cfg.spectrum.points = *opt_.points;
    if (opt_.method == "dense")
      cfg.spectrum.method = EigenMethod::Dense;
    else if (opt_.method == "iterative")
      cfg.spectrum.method = EigenMethod::Iterative;
    else if (opt_.method == "auto")
      cfg.spectrum.method = EigenMethod::Auto;
    const SpectrumResult r = numericSpectrum(cfg.spectrum);
    emit([&](std::ostream& os) {
      if (fmt == "json") {
        nlohmann::json j = toJson(r);
        j["points"] = cfg.spectrum.points;
        j["halfWidth"] = cfg.spectrum.halfWidth;
        os << j.dump(2) << '\n';
      } else {
        writeCsv(r, os);
      }
    });
    return kExitOk;
  }

  int exclusion() const {
    format("json", {"json"}, "exclusion");
    const ExclusionResult a = exclusionSinglet(LadderSource::FromSFunctions);
    const ExclusionResult b = exclusionSinglet(LadderSource::PaperEq24);
    nlohmann::json j = {
        {"results", {toJson(a), toJson(b)}},
        {"conventionIndependent", a.singlet == b.singlet},
    };
    emit([&](std::ostream& os) { os << j.dump(2) << '\n'; });
    return kExitOk;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"spinlab: exact classical spin-function algebra, spin dynamics, operator audit and "
               "internal-energy spectrum"};
  app.name("spinlab");
  app.footer(std::string(kFooter) + configReference());
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", opt.configPath, "INI file with [physics], [simulate], [spectrum] sections");
  app.add_option("--format", opt.format,
                 "json | markdown | csv | text; default json (audit, spectrum, exclusion), csv (simulate), "
                 "text (bracket)");
  app.add_option("--out", opt.outPath, "write the report here instead of stdout");
  app.add_option("--kappa", opt.kappa,
                 "value for k: integer, a/b or decimal; default 1 for numerics, symbolic in bracket");

  auto* audit = app.add_subcommand("audit", "run every check and write the audit report");
  auto* bracket = app.add_subcommand("bracket", "bracket two named expressions from a definition file");
  bracket->add_option("file", opt.bracketFile, "definition file")->required();
  bracket->add_option("lhs", opt.lhs, "left operand name")->required();
  bracket->add_option("rhs", opt.rhs, "right operand name")->required();
  bracket->add_option("--mode", opt.mode, "poisson or anti (symmetric counterpart)")
      ->check(CLI::IsMember({"poisson", "anti"}))
      ->capture_default_str();
  auto* simulate = app.add_subcommand("simulate", "integrate the precession with RK4 and write a CSV trajectory");
  simulate->add_option("--t-end", opt.tEnd, "end time; default one period 2*pi/|omega1|");
  simulate->add_option("--dt", opt.dt, "step bound; default 0.001");
  auto* spectrum = app.add_subcommand("spectrum", "solve the internal-energy eigenproblem on a grid");
  spectrum->add_option("--points", opt.points, "grid points per axis; default 128");
  spectrum->add_option("--method", opt.method, "auto | dense | iterative; default auto")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}));
  auto* exclusion = app.add_subcommand("exclusion", "derive the two-particle singlet under both ladder sources");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const Command cmd(opt, out, err);
  try {
    if (*audit) return cmd.audit();
    if (*bracket) return cmd.bracket();
    if (*simulate) return cmd.simulate();
    if (*spectrum) return cmd.spectrum();
    if (*exclusion) return cmd.exclusion();
  } catch (const ParseError& e) {
    const std::string source = *bracket ? opt.bracketFile + ":" : opt.configPath.empty() ? "" : opt.configPath + ":";
    err << "spinlab: parse error: " << source << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "spinlab: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "spinlab: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const SemanticError& e) {
    err << "spinlab: " << e.what() << '\n';
    return kExitSemantic;
  } catch (const NumericalError& e) {
    err << "spinlab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "spinlab: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace spinlab
