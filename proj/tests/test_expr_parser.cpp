#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "oracles.h"
#include "spinlab/expr_parser.h"
#include "spinlab/spin_functions.h"

namespace spinlab {
namespace {

const auto x1 = PhasePolynomial::variable(CanonicalVariable::x(1));
const auto y1 = PhasePolynomial::variable(CanonicalVariable::y(1));
const auto px1 = PhasePolynomial::variable(CanonicalVariable::px(1));
const auto py2 = PhasePolynomial::variable(CanonicalVariable::py(2));

void expectParseError(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse(text);
    FAIL() << "no error for '" << text << "'";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << text << ": " << e.what();
    EXPECT_EQ(e.column(), column) << text << ": " << e.what();
  }
}

TEST(Parser, Precedence) {
  EXPECT_EQ(parse("1 + 2*3"), PhasePolynomial(7));
  EXPECT_EQ(parse("(1 + 2)*3"), PhasePolynomial(9));
  EXPECT_EQ(parse("-x^2"), -(x1 * x1));
  EXPECT_EQ(parse("2*x^2"), 2 * x1 * x1);
  EXPECT_EQ(parse("1 - 2 - 3"), PhasePolynomial(-4));
  EXPECT_EQ(parse("--x"), x1);
  EXPECT_EQ(parse("3/6"), PhasePolynomial(GaussianRational(rational(1, 2))));
}

TEST(Parser, VariablesAndSymbols) {
  EXPECT_EQ(parse("x"), x1);
  EXPECT_EQ(parse("x1"), x1);
  EXPECT_EQ(parse("py2"), py2);
  EXPECT_EQ(parse("i*i"), PhasePolynomial(-1));
  EXPECT_EQ(parse("k^-1*k"), PhasePolynomial(1));
  EXPECT_EQ(parse("(x + px)^2"), x1 * x1 + 2 * x1 * px1 + px1 * px1);
  EXPECT_EQ(parse("  x1 *\ty1  # trailing comment"), x1 * y1);
}

TEST(Parser, ErrorPositions) {
  expectParseError("x1 + $", 1, 6);
  expectParseError("x1 +", 1, 5);
  expectParseError("(x1 + y1", 1, 9);
  expectParseError("x1 y1", 1, 4);
  expectParseError("x0", 1, 1);
  expectParseError("1/0", 1, 3);
  expectParseError("x^-1", 1, 2);
  expectParseError("(k + x)^-2", 1, 8);
  expectParseError("x^y", 1, 3);
  expectParseError("S1", 1, 1);
}

TEST(Parser, PrintCanonicalForms) {
  const SpinSet s = makeSpinSet(1);
  EXPECT_EQ(print(s.s3), "1/2*x1*py1 - 1/2*px1*y1");
  EXPECT_EQ(print(PhasePolynomial()), "0");
  EXPECT_EQ(print(PhasePolynomial::imaginaryUnit() * x1), "i*x1");
  EXPECT_EQ(print(-PhasePolynomial::kappa(-1) * x1), "-k^-1*x1");
  EXPECT_EQ(print(PhasePolynomial(GaussianRational(1, 1)) * x1), "(1 + i)*x1");
}

TEST(Parser, RoundTripRandomPolynomials) {
  std::mt19937_64 rng(20240607);
  for (int n = 0; n < 200; ++n) {
    const auto f = oracle::randomPolynomial(rng, 4, 2, 6);
    const std::string text = print(f);
    EXPECT_EQ(parse(text), f) << text;
    EXPECT_EQ(print(parse(text)), text);
  }
}

TEST(Definitions, EarlierNamesAreVisible) {
  const auto defs = parseDefinitions("A := x1 + 1\n# comment\n\nB := A^2 - 1\n");
  ASSERT_EQ(defs.size(), 2U);
  EXPECT_EQ(defs[1].line, 4U);
  EXPECT_EQ(lookup(defs, "B"), x1 * x1 + 2 * x1);
  EXPECT_THROW(lookup(defs, "C"), SemanticError);
}

TEST(Definitions, Errors) {
  const auto positionOf = [](const std::string& text) {
    try {
      parseDefinitions(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  EXPECT_EQ(positionOf("A := 1\nA := 2\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(positionOf("A := 1\nB := A + C\n"), std::make_pair(std::size_t{2}, std::size_t{10}));
  EXPECT_EQ(positionOf("x1 := 1\n").first, 1U);
  EXPECT_EQ(positionOf("k := 1\n").first, 1U);
  EXPECT_EQ(positionOf("A = 1\n").first, 1U);
  EXPECT_EQ(positionOf("A := 1\n\nB := 1 +\n"), std::make_pair(std::size_t{3}, std::size_t{9}));
}

TEST(Definitions, ShippedFileRebuildsSpinSet) {
  std::ifstream in(SPINLAB_DATA_DIR "/spin_functions.spl");
  ASSERT_TRUE(in);
  std::stringstream text;
  text << in.rdbuf();
  const auto defs = parseDefinitions(text.str());
  const SpinSet s = makeSpinSet(1);
  EXPECT_EQ(lookup(defs, "S1"), s.s1);
  EXPECT_EQ(lookup(defs, "S2"), s.s2);
  EXPECT_EQ(lookup(defs, "S3"), s.s3);
  EXPECT_EQ(lookup(defs, "S0"), s.s0);
  EXPECT_EQ(lookup(defs, "Ssq"), s.sSquared);
  EXPECT_EQ(lookup(defs, "Splus"), s.sPlus);
  EXPECT_EQ(lookup(defs, "Sminus"), s.sMinus);
  EXPECT_EQ(lookup(defs, "N"), s.n);
  EXPECT_EQ(lookup(defs, "u"), s.unit);
  EXPECT_EQ(lookup(defs, "H"), -s.s3);
}

}  // namespace
}  // namespace spinlab
