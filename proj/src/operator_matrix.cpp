#include "spinlab/operator_matrix.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spinlab {

namespace {

const GaussianRational kI = GaussianRational::imaginaryUnit();

void requireSameDim(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
}

int sumPower(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.isZero()) return b.hbarPower();
  if (b.isZero()) return a.hbarPower();
  if (a.hbarPower() != b.hbarPower())
    throw std::invalid_argument("cannot add operators with different hbar powers (" +
                                std::to_string(a.hbarPower()) + " vs " + std::to_string(b.hbarPower()) + ")");
  return a.hbarPower();
}

std::string entryText(const GaussianRational& z) {
  if (z.isReal()) return z.re().get_str();
  auto imag = [](const mpq_class& q) {
    if (q == 1) return std::string("i");
    if (q == -1) return std::string("-i");
    return q.get_str() + "*i";
  };
  if (sgn(z.re()) == 0) return imag(z.im());
  std::string out = z.re().get_str();
  const std::string im = imag(z.im());
  return out + (im[0] == '-' ? im : "+" + im);
}

}  // namespace

// ------------------------------------------------------------ OperatorMatrix

OperatorMatrix::OperatorMatrix(std::size_t dim, int hbarPower)
    : dim_(dim), hbarPower_(hbarPower), entries_(dim * dim) {}

OperatorMatrix::OperatorMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows, int hbarPower)
    : dim_(rows.size()), hbarPower_(hbarPower) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw std::invalid_argument("OperatorMatrix: rows must form a square matrix");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim, int hbarPower) {
  OperatorMatrix m(dim, hbarPower);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

OperatorMatrix OperatorMatrix::diagonal(const std::vector<GaussianRational>& diag, int hbarPower) {
  OperatorMatrix m(diag.size(), hbarPower);
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool OperatorMatrix::isZero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& z) { return z.isZero(); });
}

bool OperatorMatrix::isDiagonal() const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      if (r != c && !(*this)(r, c).isZero()) return false;
  return true;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix m(dim_, hbarPower_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

OperatorMatrix OperatorMatrix::scaled(const GaussianRational& c, int hbarShift) const {
  OperatorMatrix m = *this;
  for (auto& z : m.entries_) z *= c;
  m.hbarPower_ += hbarShift;
  return m;
}

OperatorMatrix OperatorMatrix::withHbarPower(int hbarPower) const {
  OperatorMatrix m = *this;
  m.hbarPower_ = hbarPower;
  return m;
}

ExactVector OperatorMatrix::apply(const ExactVector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("apply: vector length does not match dimension");
  ExactVector out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "operator+");
  OperatorMatrix m(a.dim(), sumPower(a, b));
  for (std::size_t i = 0; i < a.entries_.size(); ++i) m.entries_[i] = a.entries_[i] + b.entries_[i];
  return m;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "operator-");
  OperatorMatrix m(a.dim(), sumPower(a, b));
  for (std::size_t i = 0; i < a.entries_.size(); ++i) m.entries_[i] = a.entries_[i] - b.entries_[i];
  return m;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "operator*");
  const std::size_t n = a.dim();
  OperatorMatrix m(n, a.hbarPower() + b.hbarPower());
  // i-k-j order; skips zero entries of a, which dominate the sparse spin matrices.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& aik = a(i, k);
      if (aik.isZero()) continue;
      for (std::size_t j = 0; j < n; ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) return false;
  if (a.isZero() && b.isZero()) return true;
  return a.hbarPower() == b.hbarPower() && a.entries_ == b.entries_;
}

std::string OperatorMatrix::toString() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < dim_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < dim_; ++c) out << (c ? ", " : "") << entryText((*this)(r, c));
    out << "]";
  }
  out << "]";
  if (hbarPower_ != 0 && !isZero()) out << " hbar^" << hbarPower_;
  return out.str();
}

OperatorMatrix naiveProduct(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "naiveProduct");
  OperatorMatrix m(a.dim(), a.hbarPower() + b.hbarPower());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      GaussianRational sum;
      for (std::size_t k = 0; k < a.dim(); ++k) sum += a(i, k) * b(k, j);
      m(i, j) = sum;
    }
  return m;
}

nlohmann::json toJson(const OperatorMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).toString());
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"hbarPower", m.hbarPower()}, {"entries", std::move(rows)}};
}

OperatorMatrix operatorFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries") || !j.contains("hbarPower") || !j["entries"].is_array() ||
      !j["hbarPower"].is_number_integer())
    throw std::invalid_argument("operator JSON needs integer 'hbarPower' and array 'entries'");
  const auto& rows = j["entries"];
  const std::size_t n = rows.size();
  if (j.contains("dim") && j["dim"] != n) throw std::invalid_argument("operator JSON: 'dim' disagrees with entries");
  OperatorMatrix m(n, j["hbarPower"].get<int>());
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) throw std::invalid_argument("operator JSON: rows must be square");
    for (std::size_t c = 0; c < n; ++c) {
      if (!rows[r][c].is_string()) throw std::invalid_argument("operator JSON: entries must be strings");
      m(r, c) = GaussianRational::fromString(rows[r][c].get<std::string>());
    }
  }
  return m;
}

// ------------------------------------------------------------ spin matrices

OperatorMatrix pauli(int k) {
  switch (k) {
    case 1: return {{0, 1}, {1, 0}};
    case 2: return {{0, -kI}, {kI, 0}};
    case 3: return {{1, 0}, {0, -1}};
    default: throw std::invalid_argument("pauli: index must be 1, 2 or 3, got " + std::to_string(k));
  }
}

std::string toString(SpinConvention c) { return c == SpinConvention::Standard ? "STANDARD" : "PAPER_EQ22"; }

std::string toString(LadderSource s) { return s == LadderSource::FromSFunctions ? "FROM_S_FUNCTIONS" : "PAPER_EQ24"; }

std::array<OperatorMatrix, 3> spinOperators(SpinConvention convention) {
  const GaussianRational half(rational(1, 2));
  std::array<OperatorMatrix, 3> s = {pauli(1).scaled(half, 1), pauli(2).scaled(half, 1), pauli(3).scaled(half, 1)};
  if (convention == SpinConvention::PaperEq22) s[1] = s[1].scaled(-kI);
  return s;
}

std::pair<OperatorMatrix, OperatorMatrix> ladderMatrices(LadderSource source) {
  if (source == LadderSource::PaperEq24) {
    const GaussianRational half(rational(1, 2));
    return {OperatorMatrix{{0, 0}, {1, 0}}.scaled(half, 1), OperatorMatrix{{0, 1}, {0, 0}}.scaled(half, 1)};
  }
  const auto s = spinOperators(SpinConvention::Standard);
  return {s[0] + s[1].scaled(kI), s[0] - s[1].scaled(kI)};
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "commutator");
  return a * b - b * a;
}

OperatorMatrix antiCommutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  requireSameDim(a, b, "antiCommutator");
  return a * b + b * a;
}

OperatorMatrix tensorProduct(const OperatorMatrix& a, const OperatorMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  OperatorMatrix m(na * nb, a.hbarPower() + b.hbarPower());
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      if (a(i, j).isZero()) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) m(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    }
  return m;
}

OperatorMatrix embed(const OperatorMatrix& a, int slot, int nSlots) {
  if (nSlots < 1 || slot < 1 || slot > nSlots)
    throw std::invalid_argument("embed: slot " + std::to_string(slot) + " outside 1.." + std::to_string(nSlots));
  const auto id = OperatorMatrix::identity(a.dim());
  OperatorMatrix out = slot == 1 ? a : id;
  for (int s = 2; s <= nSlots; ++s) out = tensorProduct(out, s == slot ? a : id);
  return out;
}

// ------------------------------------------------------------ exact eigen

std::vector<ExactVector> nullSpace(const std::vector<GaussianRational>& rowMajor, std::size_t rows, std::size_t cols) {
  if (rowMajor.size() != rows * cols) throw std::invalid_argument("nullSpace: size mismatch");
  std::vector<GaussianRational> a = rowMajor;
  auto at = [&](std::size_t r, std::size_t c) -> GaussianRational& { return a[r * cols + c]; };
  std::vector<std::size_t> pivotCols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && at(pivot, col).isZero()) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t c = 0; c < cols; ++c) std::swap(at(row, c), at(pivot, c));
    const GaussianRational inv = GaussianRational(1) / at(row, col);
    for (std::size_t c = 0; c < cols; ++c) at(row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || at(r, col).isZero()) continue;
      const GaussianRational f = at(r, col);
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(row, c);
    }
    pivotCols.push_back(col);
    ++row;
  }
  std::vector<ExactVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivotCols.begin(), pivotCols.end(), free) != pivotCols.end()) continue;
    ExactVector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivotCols.size(); ++r) v[pivotCols[r]] = -at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<GaussianRational> characteristicPolynomial(const OperatorMatrix& m) {
  const std::size_t n = m.dim();
  const OperatorMatrix a = m.withHbarPower(0);
  std::vector<GaussianRational> c(n + 1);
  c[n] = 1;
  OperatorMatrix mk(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + OperatorMatrix::identity(n).scaled(c[n - k + 1]);
    const OperatorMatrix am = a * mk;
    GaussianRational trace;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / GaussianRational(static_cast<long>(k));
  }
  return c;
}

namespace {

std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  if (v > 1000000000) throw std::domain_error("exactEigen: characteristic polynomial coefficients too large");
  std::vector<mpz_class> out;
  const unsigned long n = v.get_ui();
  for (unsigned long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.emplace_back(d);
      if (d * d != n) out.emplace_back(n / d);
    }
  return out;
}

mpq_class horner(const std::vector<mpq_class>& coeffs, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divides by (λ − root); coefficients are lowest-degree first.
std::vector<mpq_class> deflate(const std::vector<mpq_class>& coeffs, const mpq_class& root) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<mpq_class> out(n);
  mpq_class carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = coeffs[i + 1] + carry * root;
    out[i] = carry;
  }
  return out;
}

}  // namespace

std::vector<Eigenspace> exactEigen(const OperatorMatrix& m) {
  const auto charPoly = characteristicPolynomial(m);
  std::vector<mpq_class> poly;
  for (const auto& c : charPoly) {
    if (!c.isReal()) throw std::domain_error("exactEigen: characteristic polynomial is not real");
    poly.push_back(c.re());
  }

  std::vector<std::pair<mpq_class, std::size_t>> roots;
  auto record = [&](const mpq_class& r) {
    for (auto& [value, mult] : roots)
      if (value == r) {
        ++mult;
        return;
      }
    roots.emplace_back(r, 1);
  };

  while (poly.size() > 1 && sgn(poly[0]) == 0) {
    record(0);
    poly.erase(poly.begin());
  }
  while (poly.size() > 1) {
    // Integer coefficients for the rational root test.
    mpz_class lcm = 1;
    for (const auto& c : poly) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    const mpz_class a0 = mpz_class(poly.front() * lcm);
    const mpz_class an = mpz_class(poly.back() * lcm);
    bool found = false;
    for (const auto& p : divisors(a0)) {
      for (const auto& q : divisors(an)) {
        for (int sign : {1, -1}) {
          mpq_class candidate(sign * p, q);
          candidate.canonicalize();
          if (sgn(horner(poly, candidate)) == 0) {
            record(candidate);
            poly = deflate(poly, candidate);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) throw std::domain_error("exactEigen: spectrum is not rational");
  }

  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Eigenspace> out;
  const std::size_t n = m.dim();
  for (const auto& [value, mult] : roots) {
    std::vector<GaussianRational> shifted = m.withHbarPower(0).entries();
    for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= GaussianRational(value);
    out.push_back({GaussianRational(value), mult, nullSpace(shifted, n, n)});
  }
  return out;
}

NumberOperatorResult numberOperator(const OperatorMatrix& sPlus, const OperatorMatrix& sMinus) {
  OperatorMatrix n = sPlus * sMinus;
  auto spectrum = exactEigen(n);
  return {std::move(n), std::move(spectrum)};
}

GaussianRational innerProduct(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("innerProduct: length mismatch");
  GaussianRational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].conj() * b[i];
  return s;
}

std::vector<std::complex<double>> normalized(const ExactVector& v) {
  const double norm = std::sqrt(innerProduct(v, v).re().get_d());
  std::vector<std::complex<double>> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(norm > 0 ? z.toComplex() / norm : z.toComplex());
  return out;
}

ExactVector fixPhase(const ExactVector& v) {
  for (const auto& z : v)
    if (!z.isZero()) {
      const GaussianRational inv = GaussianRational(1) / z;
      ExactVector out;
      out.reserve(v.size());
      for (const auto& w : v) out.push_back(w * inv);
      return out;
    }
  return v;
}

std::vector<ExactVector> jointEigenspace(const JointEigenproblem& problem) {
  const auto& ops = problem.operators;
  if (ops.empty()) throw std::invalid_argument("jointEigenspace: no operators");
  if (ops.size() != problem.targetEigenvalues.size())
    throw std::invalid_argument("jointEigenspace: need one target eigenvalue per operator");
  const std::size_t n = ops.front().dim();
  for (const auto& op : ops)
    if (op.dim() != n) throw std::invalid_argument("jointEigenspace: operators differ in dimension");
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b)
      if (!commutator(ops[a], ops[b]).isZero())
        throw std::invalid_argument("jointEigenspace: operators " + std::to_string(a) + " and " + std::to_string(b) +
                                    " do not commute");

  std::vector<GaussianRational> stacked;
  stacked.reserve(ops.size() * n * n);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    std::vector<GaussianRational> rows = ops[k].withHbarPower(0).entries();
    for (std::size_t i = 0; i < n; ++i) rows[i * n + i] -= problem.targetEigenvalues[k];
    stacked.insert(stacked.end(), rows.begin(), rows.end());
  }
  auto basis = nullSpace(stacked, ops.size() * n, n);

  // Exact Gram-Schmidt (orthogonal, not normalized).
  std::vector<ExactVector> ortho;
  for (auto v : basis) {
    for (const auto& u : ortho) {
      const GaussianRational f = innerProduct(u, v) / innerProduct(u, u);
      for (std::size_t i = 0; i < n; ++i) v[i] -= f * u[i];
    }
    ortho.push_back(std::move(v));
  }
  return ortho;
}

OperatorMatrix exchangeOperator() {
  OperatorMatrix p(4);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t r = 0; r < 2; ++r) p(2 * r + s, 2 * s + r) = 1;
  return p;
}

OperatorMatrix totalSpinZ() {
  const auto s3 = spinOperators(SpinConvention::Standard)[2];
  return embed(s3, 1) + embed(s3, 2);
}

OperatorMatrix totalNumber(LadderSource source) {
  const auto [plus, minus] = ladderMatrices(source);
  const OperatorMatrix n = plus * minus;
  return embed(n, 1) + embed(n, 2);
}

ExclusionResult exclusionSinglet(LadderSource source) {
  ExclusionResult res;
  res.source = source;
  const OperatorMatrix number = totalNumber(source);

  const auto levels = exactEigen(number);
  const auto level = std::find_if(levels.begin(), levels.end(),
                                  [](const Eigenspace& e) { return e.algebraicMultiplicity == 2; });
  if (level == levels.end()) throw std::domain_error("exclusionSinglet: N_total has no doubly degenerate level");
  res.numberLevel = level->value;

  res.jointBasis = jointEigenspace({{totalSpinZ(), number}, {0, res.numberLevel}});

  // Coordinates c of (P ∓ 1)·B·c = 0 inside the joint eigenspace B.
  const OperatorMatrix p = exchangeOperator();
  const std::size_t dim = res.jointBasis.size();
  auto exchangeEigen = [&](long sign) {
    std::vector<GaussianRational> rows(4 * dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const ExactVector pb = p.apply(res.jointBasis[j]);
      for (std::size_t i = 0; i < 4; ++i) rows[i * dim + j] = pb[i] - GaussianRational(sign) * res.jointBasis[j][i];
    }
    std::vector<ExactVector> out;
    for (const auto& c : nullSpace(rows, 4, dim)) {
      ExactVector v(4);
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < 4; ++i) v[i] += c[j] * res.jointBasis[j][i];
      out.push_back(fixPhase(v));
    }
    return out;
  };

  const auto antisymmetric = exchangeEigen(-1);
  const auto symmetric = exchangeEigen(+1);
  if (antisymmetric.size() != 1 || symmetric.size() != 1)
    throw std::domain_error("exclusionSinglet: exchange operator does not split the joint eigenspace 1+1");
  res.singlet = antisymmetric.front();
  res.singletNormalized = normalized(res.singlet);
  res.symmetricPartner = symmetric.front();
  res.rejectionReason = "exchange-symmetric";
  return res;
}

nlohmann::json toJson(const ExclusionResult& r) {
  auto exact = [](const ExactVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : v) a.push_back(z.toString());
    return a;
  };
  auto numeric = [](const std::vector<std::complex<double>>& v) {
    nlohmann::json a = nlohmann::json::array();
    const bool real = std::all_of(v.begin(), v.end(), [](const auto& z) { return z.imag() == 0.0; });
    for (const auto& z : v) {
      if (real)
        a.push_back(z.real());
      else
        a.push_back({z.real(), z.imag()});
    }
    return a;
  };
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& v : r.jointBasis) basis.push_back(exact(v));
  return {
      {"ladderSource", toString(r.source)},
      {"numberLevel", r.numberLevel.toString()},
      {"jointDimension", r.jointBasis.size()},
      {"jointBasis", basis},
      {"singlet", {{"exact", exact(r.singlet)}, {"normalized", numeric(r.singletNormalized)}}},
      {"rejected",
       nlohmann::json::array({{{"vector", exact(r.symmetricPartner)},
                               {"normalized", numeric(normalized(r.symmetricPartner))},
                               {"reason", r.rejectionReason}}})},
  };
}

}  // namespace spinlab
