#pragma once

// Text form of phase-space polynomials.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := atom ('^' ['-'] INTEGER)?
//   atom    := INTEGER ['/' INTEGER] | 'i' | 'k' | VAR | NAME | '(' expr ')'
//   VAR     := ('x' | 'y' | 'px' | 'py') [INTEGER >= 1]      (index defaults to 1)
//
// `k` is the scale symbol κ and `i` the imaginary unit. Negative exponents are
// only accepted on bases free of canonical variables (e.g. k^-1). NAME refers
// to an earlier definition and is only available when an environment is given.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinlab/errors.h"
#include "spinlab/polynomial.h"

namespace spinlab {

using Environment = std::map<std::string, PhasePolynomial, std::less<>>;

/// Throws ParseError with the position of the offending token.
PhasePolynomial parse(std::string_view text);
PhasePolynomial parse(std::string_view text, const Environment& env);

/// Canonical text, graded-lex ordered; parse(print(f)) == f.
std::string print(const PhasePolynomial& f);

struct Definition {
  std::string name;
  PhasePolynomial value;
  std::size_t line = 0;
};

/// Parses a definitions file: one `name := expression` per line, `#` starts a
/// comment, blank lines are ignored. Later definitions may use earlier names.
/// Positions in errors are relative to the whole file.
std::vector<Definition> parseDefinitions(std::string_view text);

/// Looks up a definition by name; throws SemanticError if absent.
const PhasePolynomial& lookup(const std::vector<Definition>& defs, std::string_view name);

}  // namespace spinlab
