#include "psslab/symcore/gauss_rational.hpp"

#include <stdexcept>

namespace psslab::sym {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  canonicalize();
}

GaussRational GaussRational::fraction(long num, long den) {
  if (den == 0) throw std::domain_error("GaussRational: zero denominator");
  return {mpq_class(num, den), 0};
}

void GaussRational::canonicalize() {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw std::domain_error("GaussRational: division by zero");
  if (sgn(im_) == 0) return {1 / re_, 0};
  mpq_class norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

GaussRational GaussRational::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  GaussRational result(1);
  GaussRational base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return sgn(im_) < 0 || im_ != 1 ? "(" + imag + ")" : imag;
  std::string sep = sgn(im_) < 0 ? "" : "+";
  return "(" + re_.get_str() + sep + imag + ")";
}

}  // namespace psslab::sym
