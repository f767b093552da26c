#pragma once

#include <complex>
#include <compare>
#include <string>

#include <gmpxx.h>

namespace psslab::sym {

/// Exact complex number p + q*i with rational p and q.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im = 0);

  static GaussRational fraction(long num, long den);
  static GaussRational imag_unit() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  /// True when the number is real and negative; used by the printer for
  /// sign placement.
  bool is_negative_real() const { return is_real() && sgn(re_) < 0; }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  GaussRational inverse() const;
  GaussRational pow(int n) const;

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Total order (real part first); only meaningful for canonical sorting.
  friend std::strong_ordering operator<=>(const GaussRational& a, const GaussRational& b);

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Text in the expression grammar: "3", "-1/2", "i", "(1/2+3*i)".
  std::string str() const;

 private:
  void canonicalize();
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace psslab::sym
