#include "spinlab/expr_parser.h"

#include <cctype>
#include <optional>
#include <sstream>

namespace spinlab {

namespace {

constexpr unsigned long kMaxExponent = 1000;

enum class Tok { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t line, std::size_t column) : src_(src), line_(line), col_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipBlank();
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += take();
        out.push_back({Tok::Integer, digits, line, col});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          ident += take();
        out.push_back({Tok::Ident, ident, line, col});
      } else {
        Tok kind;
        switch (c) {
          case '+': kind = Tok::Plus; break;
          case '-': kind = Tok::Minus; break;
          case '*': kind = Tok::Star; break;
          case '/': kind = Tok::Slash; break;
          case '^': kind = Tok::Caret; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          default:
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back({kind, std::string(1, take()), line, col});
      }
    }
  }

 private:
  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skipBlank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
};

std::optional<CanonicalVariable> variableFromName(const Token& tok) {
  const std::string& s = tok.text;
  std::size_t stem = 0;
  Axis axis{};
  Kind kind{};
  if (s.rfind("px", 0) == 0) {
    stem = 2, axis = Axis::X, kind = Kind::Momentum;
  } else if (s.rfind("py", 0) == 0) {
    stem = 2, axis = Axis::Y, kind = Kind::Momentum;
  } else if (s[0] == 'x') {
    stem = 1, axis = Axis::X, kind = Kind::Coordinate;
  } else if (s[0] == 'y') {
    stem = 1, axis = Axis::Y, kind = Kind::Coordinate;
  } else {
    return std::nullopt;
  }
  const std::string index = s.substr(stem);
  for (char c : index)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  if (index.empty()) return CanonicalVariable{1, axis, kind};
  const mpz_class n(index);
  if (n < 1) throw ParseError(tok.line, tok.column, "particle index must be >= 1 in '" + s + "'");
  if (n > 1000000) throw ParseError(tok.line, tok.column, "particle index too large in '" + s + "'");
  return CanonicalVariable{static_cast<unsigned>(n.get_ui()), axis, kind};
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Environment* env) : toks_(std::move(toks)), env_(env) {}

  PhasePolynomial parseAll() {
    PhasePolynomial p = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

  PhasePolynomial expr() {
    PhasePolynomial acc = term();
    while (true) {
      if (accept(Tok::Plus))
        acc += term();
      else if (accept(Tok::Minus))
        acc -= term();
      else
        return acc;
    }
  }

  PhasePolynomial term() {
    PhasePolynomial acc = unary();
    while (accept(Tok::Star)) acc = acc * unary();
    return acc;
  }

  PhasePolynomial unary() {
    if (accept(Tok::Minus)) return -unary();
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  PhasePolynomial power() {
    PhasePolynomial base = atom();
    if (peek().kind != Tok::Caret) return base;
    const Token& caret = next();
    const bool negative = accept(Tok::Minus);
    const Token& e = peek();
    if (e.kind != Tok::Integer) fail(e, "exponent must be an integer");
    next();
    const mpz_class value(e.text);
    if (value > kMaxExponent) fail(e, "exponent too large");
    const auto exponent = static_cast<unsigned>(value.get_ui());
    if (!negative) return base.pow(exponent);
    // Only monomials without canonical variables (coefficient times a power
    // of κ) can be inverted inside the polynomial ring.
    if (base.size() != 1 || !base.terms().begin()->first.isConstant())
      fail(caret, "negative exponent on a variable or non-monomial base");
    const auto& [m, c] = *base.terms().begin();
    const auto inverse = PhasePolynomial::term(GaussianRational(1) / c, Monomial::kappa(-m.kappaPower()));
    return inverse.pow(exponent);
  }

  PhasePolynomial atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer: {
        next();
        mpq_class value{mpz_class(t.text)};
        if (accept(Tok::Slash)) {
          const Token& d = peek();
          if (d.kind != Tok::Integer) fail(d, "expected denominator after '/'");
          next();
          const mpz_class den(d.text);
          if (den == 0) fail(d, "zero denominator");
          value = mpq_class(mpz_class(t.text), den);
          value.canonicalize();
        }
        return GaussianRational(value);
      }
      case Tok::Ident: {
        next();
        if (t.text == "i") return PhasePolynomial::imaginaryUnit();
        if (t.text == "k") return PhasePolynomial::kappa(1);
        if (auto v = variableFromName(t)) return PhasePolynomial::variable(*v);
        if (env_ != nullptr) {
          const auto it = env_->find(t.text);
          if (it != env_->end()) return it->second;
        }
        fail(t, "unknown identifier '" + t.text + "'");
      }
      case Tok::LParen: {
        next();
        PhasePolynomial inner = expr();
        if (!accept(Tok::RParen)) fail(peek(), "expected ')'");
        return inner;
      }
      case Tok::End:
        fail(t, "unexpected end of input");
      default:
        fail(t, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Environment* env_;
};

PhasePolynomial parseAt(std::string_view text, const Environment* env, std::size_t line, std::size_t column) {
  return Parser(Lexer(text, line, column).run(), env).parseAll();
}

// Prints a nonnegative rational, or a pure-imaginary/complex coefficient, as a
// factor string. `magnitude` is already sign-normalized.
std::string coefficientFactor(const GaussianRational& c) {
  if (c.isReal()) return c.re().get_str();
  if (sgn(c.re()) == 0) {
    if (c.im() == 1) return "i";
    return c.im().get_str() + "*i";
  }
  std::string out = "(" + c.re().get_str();
  if (sgn(c.im()) < 0) {
    out += " - ";
    const mpq_class a = -c.im();
    out += a == 1 ? "i" : a.get_str() + "*i";
  } else {
    out += " + ";
    out += c.im() == 1 ? "i" : c.im().get_str() + "*i";
  }
  return out + ")";
}

}  // namespace

PhasePolynomial parse(std::string_view text) { return parseAt(text, nullptr, 1, 1); }

PhasePolynomial parse(std::string_view text, const Environment& env) { return parseAt(text, &env, 1, 1); }

std::string print(const PhasePolynomial& f) {
  if (f.isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    // A real or purely imaginary coefficient carries its sign outside the term.
    bool negative = false;
    GaussianRational shown = c;
    if (c.isReal() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
      negative = true;
      shown = -c;
    }
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;

    std::vector<std::string> factors;
    const bool bare = m.isConstant() && m.kappaPower() == 0;
    if (!shown.isOne() || bare) factors.push_back(coefficientFactor(shown));
    if (m.kappaPower() == 1)
      factors.emplace_back("k");
    else if (m.kappaPower() != 0)
      factors.push_back("k^" + std::to_string(m.kappaPower()));
    for (const auto& [v, e] : m.factors())
      factors.push_back(e == 1 ? v.name() : v.name() + "^" + std::to_string(e));
    for (std::size_t i = 0; i < factors.size(); ++i) out << (i ? "*" : "") << factors[i];
  }
  return out.str();
}

std::vector<Definition> parseDefinitions(std::string_view text) {
  std::vector<Definition> defs;
  Environment env;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++lineNo;
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const auto assign = line.find(":=");
    if (assign == std::string_view::npos) throw ParseError(lineNo, first + 1, "expected 'name := expression'");

    std::string_view name = line.substr(first, assign - first);
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.remove_suffix(1);
    bool valid = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) valid = valid && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!valid) throw ParseError(lineNo, first + 1, "invalid definition name '" + std::string(name) + "'");

    const Token nameTok{Tok::Ident, std::string(name), lineNo, first + 1};
    if (name == "i" || name == "k" || variableFromName(nameTok))
      throw ParseError(lineNo, first + 1, "'" + std::string(name) + "' is a reserved symbol");
    if (env.contains(name)) throw ParseError(lineNo, first + 1, "duplicate definition of '" + std::string(name) + "'");

    PhasePolynomial value = parseAt(line.substr(assign + 2), &env, lineNo, assign + 3);
    env.emplace(std::string(name), value);
    defs.push_back({std::string(name), std::move(value), lineNo});
    if (end == text.size()) break;
  }
  return defs;
}

const PhasePolynomial& lookup(const std::vector<Definition>& defs, std::string_view name) {
  for (const auto& d : defs)
    if (d.name == name) return d.value;
  throw SemanticError("undefined name '" + std::string(name) + "'");
}

}  // namespace spinlab
