#include "spinlab/gaussian_rational.h"

#include <stdexcept>

namespace spinlab {

mpq_class rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.isZero()) throw std::domain_error("GaussianRational: division by zero");
  const mpq_class n = o.normSquared();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::toString() const {
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += "-";
    out += mpq_class(-im_).get_str();
  } else {
    out += "+";
    out += im_.get_str();
  }
  out += "i";
  return out;
}

GaussianRational GaussianRational::fromString(const std::string& text) {
  if (text.size() < 4 || text.back() != 'i')
    throw std::invalid_argument("malformed Gaussian rational '" + text + "'");
  // The separator is the last sign that is not the leading character.
  const auto sep = text.find_last_of("+-");
  if (sep == std::string::npos || sep == 0)
    throw std::invalid_argument("malformed Gaussian rational '" + text + "'");
  auto parse = [&](const std::string& part) {
    mpq_class q;
    if (part.empty() || q.set_str(part, 10) != 0 || mpz_sgn(q.get_den_mpz_t()) == 0)
      throw std::invalid_argument("malformed Gaussian rational '" + text + "'");
    q.canonicalize();
    return q;
  };
  mpq_class re = parse(text.substr(0, sep));
  mpq_class im = parse(text.substr(sep + 1, text.size() - sep - 2));
  if (text[sep] == '-') im = -im;
  return {re, im};
}

}  // namespace spinlab
