#include "spinlab/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "spinlab/errors.h"

namespace spinlab {

namespace {

namespace pt = boost::property_tree;

// property_tree keeps no positions, so keys are located in the raw text.
class KeyLocator {
 public:
  explicit KeyLocator(std::string_view text) {
    std::string section;
    std::size_t line = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line;
      const std::string s = boost::algorithm::trim_copy(raw);
      if (s.empty() || s[0] == ';' || s[0] == '#') continue;
      if (s.front() == '[') {
        section = boost::algorithm::trim_copy(s.substr(1, s.find(']') - 1));
        sections_.emplace(section, line);
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = boost::algorithm::trim_copy(s.substr(0, eq));
      const auto valueStart = raw.find_first_not_of(" \t", raw.find('=') + 1);
      keys_.emplace(section + "." + key, Position{line, valueStart == std::string::npos ? 1 : valueStart + 1});
    }
  }

  struct Position {
    std::size_t line;
    std::size_t column;
  };

  Position key(const std::string& path) const {
    const auto it = keys_.find(path);
    return it == keys_.end() ? Position{0, 0} : it->second;
  }
  Position section(const std::string& name) const {
    const auto it = sections_.find(name);
    return it == sections_.end() ? Position{0, 0} : Position{it->second, 1};
  }

 private:
  std::map<std::string, Position> keys_;
  std::map<std::string, std::size_t> sections_;
};

struct Context {
  const KeyLocator& where;

  [[noreturn]] void fail(KeyLocator::Position p, const std::string& message) const {
    throw ParseError(p.line, p.column, message);
  }
};

double toDouble(const Context& ctx, const std::string& path, const std::string& value) {
  double v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    ctx.fail(ctx.where.key(path), "'" + path + "' expects a finite number, got '" + value + "'");
  return v;
}

std::uint64_t toCount(const Context& ctx, const std::string& path, const std::string& value) {
  std::uint64_t v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end)
    ctx.fail(ctx.where.key(path), "'" + path + "' expects a non-negative integer, got '" + value + "'");
  return v;
}

using Setter = std::function<void(RunConfig&, const Context&, const std::string&, const std::string&)>;

Setter number(double RunConfig::*member) {
  return [member](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
    c.*member = toDouble(ctx, p, v);
  };
}

template <typename Field>
Setter physics(Field PhysicalParams::*member) {
  return [member](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
    c.physics.*member = toDouble(ctx, p, v);
  };
}

Setter initial(std::size_t index) {
  return [index](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
    c.initial[index] = toDouble(ctx, p, v);
  };
}

Setter oscillator(double OscillatorConfig::*member) {
  return [member](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
    c.spectrum.*member = toDouble(ctx, p, v);
  };
}

Setter oscillatorCount(std::size_t OscillatorConfig::*member) {
  return [member](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
    c.spectrum.*member = static_cast<std::size_t>(toCount(ctx, p, v));
  };
}

struct Key {
  std::string path;
  std::string fallback;  // default, for the reference text
  std::string doc;
  Setter set;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"physics.charge", "1", "particle charge e", physics(&PhysicalParams::charge)},
      {"physics.mass", "1", "particle mass m (> 0)", physics(&PhysicalParams::mass)},
      {"physics.lightSpeed", "1", "speed of light c (> 0)", physics(&PhysicalParams::lightSpeed)},
      {"physics.B3", "1", "magnetic field along z", physics(&PhysicalParams::fieldB3)},
      {"physics.g", "2", "Lande factor", physics(&PhysicalParams::landeG)},
      {"physics.kappa", "1", "value substituted for k in numeric evaluation (> 0)",
       physics(&PhysicalParams::kappaValue)},
      {"simulate.x", "1", "initial x", initial(0)},
      {"simulate.y", "0", "initial y", initial(1)},
      {"simulate.px", "0", "initial p_x", initial(2)},
      {"simulate.py", "0", "initial p_y", initial(3)},
      {"simulate.tEnd", "one period 2*pi/|omega1|", "end time (>= 0)", number(&RunConfig::tEnd)},
      {"simulate.dt", "0.001", "step bound; the step is shortened to land on tEnd", number(&RunConfig::dt)},
      {"spectrum.mass", "1", "oscillator mass", oscillator(&OscillatorConfig::mass)},
      {"spectrum.omega", "1", "oscillator frequency", oscillator(&OscillatorConfig::omega)},
      {"spectrum.hbar", "1", "Planck constant", oscillator(&OscillatorConfig::hbar)},
      {"spectrum.halfWidth", "8", "box half-width L", oscillator(&OscillatorConfig::halfWidth)},
      {"spectrum.points", "128", "interior grid points per axis (>= 16)", oscillatorCount(&OscillatorConfig::points)},
      {"spectrum.eigCount", "6", "number of eigenpairs", oscillatorCount(&OscillatorConfig::eigCount)},
      {"spectrum.clusterTol", "0.01", "degeneracy clustering tolerance in units of hbar*omega",
       oscillator(&OscillatorConfig::clusterTol)},
      {"spectrum.floorLambda", "1", "energy floor for the freeze predicate", oscillator(&OscillatorConfig::floorLambda)},
      {"spectrum.residualTol", "1e-10", "eigenpair residual tolerance", oscillator(&OscillatorConfig::residualTol)},
      {"spectrum.boundaryTol", "1e-6", "max boundary amplitude relative to peak",
       oscillator(&OscillatorConfig::boundaryTol)},
      {"spectrum.filterDegree", "24", "Chebyshev filter degree", oscillatorCount(&OscillatorConfig::filterDegree)},
      {"spectrum.maxIterations", "400", "subspace iteration cap", oscillatorCount(&OscillatorConfig::maxIterations)},
      {"spectrum.seed", "20240607", "start-block random seed",
       [](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
         c.spectrum.seed = toCount(ctx, p, v);
       }},
      {"spectrum.method", "auto", "auto | dense | iterative",
       [](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
         if (v == "auto")
           c.spectrum.method = EigenMethod::Auto;
         else if (v == "dense")
           c.spectrum.method = EigenMethod::Dense;
         else if (v == "iterative")
           c.spectrum.method = EigenMethod::Iterative;
         else
           ctx.fail(ctx.where.key(p), "'" + p + "' must be auto, dense or iterative");
       }},
      {"spectrum.backend", "openmp", "openmp | serial",
       [](RunConfig& c, const Context& ctx, const std::string& p, const std::string& v) {
         if (v == "openmp")
           c.spectrum.backend = kernels::Backend::OpenMP;
         else if (v == "serial")
           c.spectrum.backend = kernels::Backend::Serial;
         else
           ctx.fail(ctx.where.key(p), "'" + p + "' must be openmp or serial");
       }},
  };
  return table;
}

}  // namespace

double RunConfig::resolvedEndTime() const {
  if (tEnd >= 0) return tEnd;
  const double w1 = physics.omega1();
  return w1 != 0 ? 2 * std::numbers::pi / std::abs(w1) : 2 * std::numbers::pi;
}

RunConfig parseConfig(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.line(), 1, e.message());
  }
  const KeyLocator where(text);
  const Context ctx{where};

  std::map<std::string, const Key*> byPath;
  for (const auto& k : keys()) byPath.emplace(k.path, &k);

  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (where.section(section).line == 0)
      ctx.fail(where.key("." + section), "key '" + section + "' must be inside [physics], [simulate] or [spectrum]");
    for (const auto& [key, value] : body) {
      const std::string path = section + "." + key;
      const auto it = byPath.find(path);
      if (it == byPath.end()) {
        const auto pos = where.key(path);
        ctx.fail(pos.line ? pos : where.section(section), "unknown key '" + path + "'");
      }
      it->second->set(cfg, ctx, path, boost::algorithm::trim_copy(value.data()));
    }
  }

  const auto check = [&](bool ok, const std::string& path, const std::string& message) {
    if (!ok) {
      const auto pos = where.key(path);
      ctx.fail(pos.line ? pos : KeyLocator::Position{1, 1}, message);
    }
  };
  check(cfg.physics.mass > 0, "physics.mass", "physics.mass must be positive");
  check(cfg.physics.lightSpeed > 0, "physics.lightSpeed", "physics.lightSpeed must be positive");
  check(cfg.physics.kappaValue > 0, "physics.kappa", "physics.kappa must be positive");
  check(cfg.dt > 0, "simulate.dt", "simulate.dt must be positive");
  check(where.key("simulate.tEnd").line == 0 || cfg.tEnd >= 0, "simulate.tEnd", "simulate.tEnd must be >= 0");
  try {
    cfg.spectrum.validate();
  } catch (const std::invalid_argument& e) {
    ctx.fail(where.section("spectrum").line ? where.section("spectrum") : KeyLocator::Position{1, 1},
             std::string("[spectrum] ") + e.what());
  }
  return cfg;
}

RunConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseConfig(buf.str());
}

std::string configReference() {
  std::ostringstream out;
  std::string section;
  for (const auto& k : keys()) {
    const std::string s = k.path.substr(0, k.path.find('.'));
    if (s != section) {
      section = s;
      out << "  [" << section << "]\n";
    }
    out << "    " << k.path.substr(k.path.find('.') + 1) << " = " << k.fallback << "    ; " << k.doc << "\n";
  }
  return out.str();
}

}  // namespace spinlab
