#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace uec {

/// Exact complex rational x + iy with x, y in Q. Both parts are kept in
/// canonical form (positive denominators, lowest terms).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  /// Parses "a/b+c/d*i" with either part optional ("3/2", "-1/3*i", "1+2*i", "i").
  static GaussianRational parse(std::string_view text);

  /// Nearest Gaussian rational with denominator `den` to a floating value.
  static GaussianRational round_to(std::complex<double> value, const mpz_class& den);

  /// Exact value of a double-precision complex number.
  static GaussianRational from_double(std::complex<double> value);

  /// Canonical text form accepted by parse(); parse(x.str()) == x.
  std::string str() const;

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const;
  /// |x| in floating point, nudged upward so it never underestimates.
  double abs_upper() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

/// Upper bound for |q| of a rational in double precision.
double abs_upper(const mpq_class& q);

}  // namespace uec
