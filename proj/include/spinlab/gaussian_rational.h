#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace spinlab {

/// Builds a canonical rational num/den. `den` must be nonzero.
mpq_class rational(long num, long den = 1);

/// Complex number a + b·i with exact rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long re) : re_(re) {}

  static GaussianRational imaginaryUnit() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool isZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool isReal() const { return sgn(im_) == 0; }
  bool isOne() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|², always a nonnegative rational.
  mpq_class normSquared() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws std::domain_error on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> toComplex() const { return {re_.get_d(), im_.get_d()}; }

  /// "a+bi" form with rational parts, e.g. "1/2+0i", "0-1i", "-3/4+1/2i".
  std::string toString() const;
  /// Inverse of toString(). Throws std::invalid_argument on malformed input.
  static GaussianRational fromString(const std::string& text);

 private:
  mpq_class re_;
  mpq_class im_;
};

}  // namespace spinlab
