#include "spinlab/polynomial.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinlab {

CanonicalVariable CanonicalVariable::fromOrdinal(std::size_t ordinal) {
  return {static_cast<unsigned>(ordinal / 4 + 1), static_cast<Axis>((ordinal / 2) % 2),
          static_cast<Kind>(ordinal % 2)};
}

std::string CanonicalVariable::name() const {
  std::string out = kind == Kind::Momentum ? "p" : "";
  out += axis == Axis::X ? "x" : "y";
  return out + std::to_string(particle);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(CanonicalVariable v, unsigned power) {
  if (v.particle == 0) throw std::invalid_argument("particle index must be >= 1");
  Monomial m;
  m.exponents_.assign(v.ordinal() + 1, 0U);
  m.exponents_[v.ordinal()] = power;
  m.trim();
  return m;
}

Monomial Monomial::kappa(int power) {
  Monomial m;
  m.kappaPower_ = power;
  return m;
}

unsigned Monomial::degree() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0U); }

std::vector<std::pair<CanonicalVariable, unsigned>> Monomial::factors() const {
  std::vector<std::pair<CanonicalVariable, unsigned>> out;
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] != 0) out.emplace_back(CanonicalVariable::fromOrdinal(i), exponents_[i]);
  return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.exponents_.resize(std::max(exponents_.size(), o.exponents_.size()), 0U);
  for (std::size_t i = 0; i < exponents_.size(); ++i) m.exponents_[i] += exponents_[i];
  for (std::size_t i = 0; i < o.exponents_.size(); ++i) m.exponents_[i] += o.exponents_[i];
  m.kappaPower_ = kappaPower_ + o.kappaPower_;
  return m;
}

Monomial Monomial::withoutOne(CanonicalVariable v) const {
  Monomial m = *this;
  --m.exponents_.at(v.ordinal());
  m.trim();
  return m;
}

void Monomial::trim() {
  while (!exponents_.empty() && exponents_.back() == 0) exponents_.pop_back();
}

bool GradedLexOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da > db;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  const std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = i < ea.size() ? ea[i] : 0U;
    const unsigned y = i < eb.size() ? eb[i] : 0U;
    if (x != y) return x > y;
  }
  return a.kappaPower() > b.kappaPower();
}

// ---------------------------------------------------------- PhasePolynomial

PhasePolynomial::PhasePolynomial(GaussianRational c) {
  if (!c.isZero()) terms_.emplace(Monomial{}, std::move(c));
}

PhasePolynomial PhasePolynomial::term(GaussianRational coefficient, Monomial monomial) {
  PhasePolynomial p;
  p.addTerm(monomial, coefficient);
  return p;
}

void PhasePolynomial::addTerm(const Monomial& m, const GaussianRational& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.isZero()) terms_.erase(it);
}

unsigned PhasePolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::set<CanonicalVariable> PhasePolynomial::variables() const {
  std::set<CanonicalVariable> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) out.insert(v);
  return out;
}

std::set<unsigned> PhasePolynomial::particles() const {
  std::set<unsigned> out;
  for (const auto& v : variables()) out.insert(v.particle);
  return out;
}

bool PhasePolynomial::isReal() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.isReal(); });
}

PhasePolynomial PhasePolynomial::operator-() const {
  PhasePolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& o) {
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  PhasePolynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.addTerm(ma * mb, ca * cb);
  return out;
}

PhasePolynomial PhasePolynomial::pow(unsigned exponent) const {
  PhasePolynomial result(1);
  PhasePolynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

PhasePolynomial add(const PhasePolynomial& f, const PhasePolynomial& g) { return f + g; }
PhasePolynomial mul(const PhasePolynomial& f, const PhasePolynomial& g) { return f * g; }

// ------------------------------------------------------------------ calculus

PhasePolynomial partialDerivative(const PhasePolynomial& f, CanonicalVariable v) {
  PhasePolynomial out;
  for (const auto& [m, c] : f.terms()) {
    const unsigned e = m.exponent(v);
    if (e == 0) continue;
    out.addTerm(m.withoutOne(v), c * GaussianRational(static_cast<long>(e)));
  }
  return out;
}

namespace {

PhasePolynomial bracket(const PhasePolynomial& f, const PhasePolynomial& g, bool symmetric) {
  std::set<unsigned> particles = f.particles();
  particles.merge(g.particles());
  PhasePolynomial out;
  for (unsigned p : particles) {
    for (Axis axis : {Axis::X, Axis::Y}) {
      const CanonicalVariable q{p, axis, Kind::Coordinate};
      const CanonicalVariable mom = q.conjugate();
      out += partialDerivative(f, q) * partialDerivative(g, mom);
      const PhasePolynomial second = partialDerivative(f, mom) * partialDerivative(g, q);
      if (symmetric)
        out += second;
      else
        out -= second;
    }
  }
  return out;
}

}  // namespace

PhasePolynomial poissonBracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  return bracket(f, g, false);
}

PhasePolynomial antiBracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  return bracket(f, g, true);
}

PhasePolynomial substituteKappa(const PhasePolynomial& f, const mpq_class& kappaValue) {
  if (sgn(kappaValue) <= 0) throw std::invalid_argument("kappa value must be positive");
  PhasePolynomial out;
  for (const auto& [m, c] : f.terms()) {
    const int k = m.kappaPower();
    const auto absK = static_cast<unsigned long>(std::abs(k));
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), kappaValue.get_num_mpz_t(), absK);
    mpz_pow_ui(pd.get_mpz_t(), kappaValue.get_den_mpz_t(), absK);
    mpq_class factor = k >= 0 ? mpq_class(pn, pd) : mpq_class(pd, pn);
    factor.canonicalize();
    Monomial plain;
    for (const auto& [v, e] : m.factors()) plain = plain * Monomial::of(v, e);
    out.addTerm(plain, c * GaussianRational(factor));
  }
  return out;
}

// ---------------------------------------------------------------- evaluation

CompiledPolynomial::CompiledPolynomial(const PhasePolynomial& f, double kappaValue) {
  if (!(kappaValue > 0.0)) throw std::invalid_argument("kappa value must be positive");
  terms_.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Term t;
    t.coefficient = c.toComplex() * std::pow(kappaValue, m.kappaPower());
    const auto exps = m.exponents();
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] != 0) t.powers.emplace_back(i, exps[i]);
    arity_ = std::max(arity_, exps.size());
    terms_.push_back(std::move(t));
  }
}

std::complex<double> CompiledPolynomial::operator()(std::span<const double> coords) const {
  if (coords.size() < arity_) throw std::invalid_argument("CompiledPolynomial: too few coordinates");
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    double prod = 1.0;
    for (const auto& [i, e] : t.powers)
      for (unsigned k = 0; k < e; ++k) prod *= coords[i];
    sum += t.coefficient * prod;
  }
  return sum;
}

std::complex<double> evaluate(const PhasePolynomial& f, const PhasePoint& point, double kappaValue) {
  std::vector<double> coords;
  for (const auto& v : f.variables()) {
    const auto it = point.find(v);
    if (it == point.end()) throw std::invalid_argument("evaluate: no value for variable " + v.name());
    if (coords.size() <= v.ordinal()) coords.resize(v.ordinal() + 1, 0.0);
    coords[v.ordinal()] = it->second;
  }
  return CompiledPolynomial(f, kappaValue)(coords);
}

}  // namespace spinlab
