#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "spinlab/cli.h"
#include "spinlab/config.h"
#include "spinlab/errors.h"

namespace spinlab {
namespace {

const std::string kSpinFile = SPINLAB_DATA_DIR "/spin_functions.spl";

std::pair<std::size_t, std::size_t> errorPosition(const std::string& text) {
  try {
    parseConfig(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("spinlab_test_" + name)).string();
}

std::string writeTemp(const std::string& name, const std::string& text) {
  const std::string path = tempPath(name);
  std::ofstream(path) << text;
  return path;
}

TEST(Config, DefaultsAndOverrides) {
  const RunConfig d = parseConfig("");
  EXPECT_DOUBLE_EQ(d.physics.omega1(), 1.0);
  EXPECT_DOUBLE_EQ(d.resolvedEndTime(), 2 * std::numbers::pi);
  EXPECT_EQ(d.spectrum.points, 128U);

  const RunConfig c = parseConfig(
      "; comment\n[physics]\nB3 = 2\nkappa = 0.5\n[simulate]\nx = 0.25\ndt = 0.01\n"
      "[spectrum]\npoints = 40\nmethod = iterative\nbackend = serial\n");
  EXPECT_DOUBLE_EQ(c.physics.omega1(), 2.0);
  EXPECT_DOUBLE_EQ(c.physics.kappaValue, 0.5);
  EXPECT_DOUBLE_EQ(c.resolvedEndTime(), std::numbers::pi);
  EXPECT_DOUBLE_EQ(c.initial[0], 0.25);
  EXPECT_DOUBLE_EQ(c.dt, 0.01);
  EXPECT_EQ(c.spectrum.points, 40U);
  EXPECT_EQ(c.spectrum.method, EigenMethod::Iterative);
  EXPECT_EQ(c.spectrum.backend, kernels::Backend::Serial);

  RunConfig still;
  still.physics.fieldB3 = 0;
  EXPECT_DOUBLE_EQ(still.resolvedEndTime(), 2 * std::numbers::pi);
}

TEST(Config, PositionedErrors) {
  EXPECT_EQ(errorPosition("[spectrum]\npoints = abc\n"), std::make_pair(std::size_t{2}, std::size_t{10}));
  EXPECT_EQ(errorPosition("[physics]\n\nnope = 1\n").first, 3U);
  EXPECT_EQ(errorPosition("[physics]\nmass = 0\n").first, 2U);
  EXPECT_EQ(errorPosition("[physics]\nmass\n").first, 2U);
  EXPECT_EQ(errorPosition("[spectrum]\nmethod = fast\n").first, 2U);
  EXPECT_EQ(errorPosition("[spectrum]\npoints = 4\n").first, 1U);
  EXPECT_EQ(errorPosition("mass = 1\n").first, 1U);
  EXPECT_EQ(errorPosition("[other]\nx = 1\n").first, 2U);
  EXPECT_THROW(loadConfig(tempPath("does_not_exist.ini")), IoError);
}

TEST(Config, ShippedDefaultsMatchBuiltIn) {
  const RunConfig shipped = loadConfig(SPINLAB_DATA_DIR "/default.ini");
  const RunConfig built;
  EXPECT_DOUBLE_EQ(shipped.physics.omega1(), built.physics.omega1());
  EXPECT_EQ(shipped.initial, built.initial);
  EXPECT_DOUBLE_EQ(shipped.dt, built.dt);
  EXPECT_DOUBLE_EQ(shipped.resolvedEndTime(), built.resolvedEndTime());
  EXPECT_EQ(shipped.spectrum.points, built.spectrum.points);
  EXPECT_EQ(shipped.spectrum.seed, built.spectrum.seed);
  EXPECT_DOUBLE_EQ(shipped.spectrum.residualTol, built.spectrum.residualTol);
}

TEST(Config, ReferenceListsEveryKey) {
  const std::string ref = configReference();
  for (const char* key : {"charge", "B3", "kappa", "tEnd", "dt", "halfWidth", "points", "clusterTol", "seed"})
    EXPECT_NE(ref.find(key), std::string::npos) << key;
}

TEST(Cli, BracketExamples) {
  EXPECT_EQ(cli({"bracket", kSpinFile, "S3", "H"}).out, "0\n");
  EXPECT_EQ(cli({"bracket", kSpinFile, "Splus", "Sminus", "--mode", "anti"}).out, "x1*px1 + y1*py1\n");
  EXPECT_EQ(cli({"bracket", kSpinFile, "Splus", "Sminus"}).out, "-i*x1*py1 + i*px1*y1\n");
  EXPECT_EQ(cli({"bracket", kSpinFile, "S1", "S2", "--kappa", "2"}).out, "1/2*x1*py1 - 1/2*px1*y1\n");
  const std::string file = writeTemp("xp.spl", "a := x1\nb := px1\n");
  EXPECT_EQ(cli({"bracket", file, "a", "b"}).out, "1\n");
  const auto j = nlohmann::json::parse(cli({"--format", "json", "bracket", file, "a", "b"}).out);
  EXPECT_EQ(j["result"], "1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"bracket", kSpinFile, "S1", "Nope"}).code, kExitSemantic);
  const auto bad = cli({"bracket", writeTemp("bad.spl", "A := x1 +* 2\n"), "A", "A"});
  EXPECT_EQ(bad.code, kExitInput);
  EXPECT_NE(bad.err.find(":1:10:"), std::string::npos) << bad.err;
  EXPECT_EQ(cli({"bracket", tempPath("missing.spl"), "A", "A"}).code, kExitInput);
  EXPECT_EQ(cli({"bracket", kSpinFile, "S1", "S2", "--mode", "other"}).code, kExitInput);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(cli({}).code, kExitInput);
  EXPECT_EQ(cli({"--format", "csv", "audit"}).code, kExitInput);
  EXPECT_EQ(cli({"--kappa", "-1", "simulate"}).code, kExitInput);
  EXPECT_EQ(cli({"--kappa", "abc", "simulate"}).code, kExitInput);

  const auto cfg = cli({"--config", writeTemp("bad.ini", "[spectrum]\npoints = abc\n"), "spectrum"});
  EXPECT_EQ(cfg.code, kExitInput);
  EXPECT_NE(cfg.err.find("bad.ini:2:10:"), std::string::npos) << cfg.err;

  const auto narrow = writeTemp("narrow.ini", "[spectrum]\nhalfWidth = 2\npoints = 32\n");
  EXPECT_EQ(cli({"--config", narrow, "spectrum"}).code, kExitNumerical);
  EXPECT_EQ(cli({"--out", "/nonexistent-dir/x.json", "exclusion"}).code, kExitInput);
}

TEST(Cli, HelpDocumentsDefaults) {
  const auto help = cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  for (const char* text : {"kappa", "omega1 = 1", "halfWidth = 8", "dt = 0.001", "Exit codes", "audit", "bracket"})
    EXPECT_NE(help.out.find(text), std::string::npos) << text;
}

TEST(Cli, Simulate) {
  const auto run = cli({"simulate"});
  EXPECT_EQ(run.code, kExitOk);
  EXPECT_EQ(run.out.substr(0, run.out.find('\n')), "time,x,y,px,py,S1,S2,S3,S0");
  EXPECT_NE(run.err.find("summary:"), std::string::npos);
  const auto zero = cli({"simulate", "--t-end", "0"});
  EXPECT_EQ(std::count(zero.out.begin(), zero.out.end(), '\n'), 2);

  const auto still = cli({"--config", writeTemp("still.ini", "[physics]\nB3 = 0\n[simulate]\ny = 0.5\n"),
                          "simulate", "--t-end", "0.5", "--dt", "0.1"});
  std::istringstream rows(still.out);
  std::string line, first;
  std::getline(rows, line);
  std::getline(rows, first);
  const std::string sFirst = first.substr(first.find(',', first.find(',', first.find(',', first.find(',', first.find(',') + 1) + 1) + 1) + 1));
  while (std::getline(rows, line)) EXPECT_EQ(line.substr(line.size() - sFirst.size()), sFirst);

  const std::string out = tempPath("traj.csv");
  const auto toFile = cli({"--out", out, "simulate"});
  EXPECT_EQ(toFile.code, kExitOk);
  EXPECT_NE(toFile.out.find("maxClosedFormDeviation="), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out));
}

TEST(Cli, ExclusionAndSpectrum) {
  const auto ex = nlohmann::json::parse(cli({"exclusion"}).out);
  EXPECT_TRUE(ex["conventionIndependent"].get<bool>());
  const auto& singlet = ex["results"][0]["singlet"]["normalized"];
  EXPECT_NEAR(singlet[1].get<double>(), 0.70710678, 1e-8);
  EXPECT_NEAR(singlet[2].get<double>(), -0.70710678, 1e-8);
  EXPECT_EQ(ex["results"][0]["rejected"][0]["reason"], "exchange-symmetric");

  const auto sp = nlohmann::json::parse(cli({"spectrum", "--points", "64"}).out);
  EXPECT_NEAR(sp["lambdas"][0].get<double>(), 1.0, 1e-2);
  EXPECT_EQ(cli({"--format", "csv", "spectrum", "--points", "32"}).code, kExitOk);
}

TEST(Cli, AuditFormats) {
  const auto j = nlohmann::json::parse(cli({"audit"}).out);
  EXPECT_GE(j["entries"].size(), 40U);
  const auto md = cli({"--format", "markdown", "audit"});
  EXPECT_EQ(md.code, kExitOk);
  EXPECT_EQ(md.out.rfind("# spinlab audit report", 0), 0U);
}

}  // namespace
}  // namespace spinlab
