#include "uec/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace uec {

namespace {

mpq_class parse_rational(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("empty rational in \"" + std::string(whole) + "\"");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw std::invalid_argument("bad character in coefficient \"" + std::string(whole) + "\"");
    }
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos && (slash == 0 || slash + 1 == s.size())) {
    throw std::invalid_argument("malformed fraction in \"" + std::string(whole) + "\"");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational in \"" + std::string(whole) + "\"");
  if (sgn(q.get_den()) == 0) throw std::domain_error("zero denominator in \"" + std::string(whole) + "\"");
  q.canonicalize();
  return q;
}

// Imaginary term without the trailing "i": "", "+", "-", "3/2", "-3/2*", "2*".
mpq_class parse_imag(std::string_view coef, std::string_view whole) {
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  if (coef.empty() || coef == "+") return 1;
  if (coef == "-") return -1;
  return parse_rational(coef, whole);
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  std::string_view v(s);
  if (v.back() != 'i') return {parse_rational(v, text), 0};

  v.remove_suffix(1);
  // Split at the last sign that is not the leading character.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = v.size(); k-- > 1;) {
    if (v[k] == '+' || v[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0, parse_imag(v, text)};
  return {parse_rational(v.substr(0, split), text), parse_imag(v.substr(split), text)};
}

GaussianRational GaussianRational::round_to(std::complex<double> value, const mpz_class& den) {
  auto round_part = [&](double x) {
    mpq_class exact(x);
    mpq_class scaled = exact * den;
    // floor(scaled + 1/2)
    mpz_class num = scaled.get_num() * 2 + scaled.get_den();
    mpz_class twice_den = scaled.get_den() * 2;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), twice_den.get_mpz_t());
    return mpq_class(q, den);
  };
  return {round_part(value.real()), round_part(value.imag())};
}

GaussianRational GaussianRational::from_double(std::complex<double> value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw std::domain_error("non-finite value cannot be made exact");
  }
  return {mpq_class(value.real()), mpq_class(value.imag())};
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part = im_.get_str() + "*i";
  if (sgn(re_) == 0) return im_part;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
}

std::complex<double> GaussianRational::to_complex() const { return {re_.get_d(), im_.get_d()}; }

double abs_upper(const mpq_class& q) {
  double d = std::fabs(q.get_d());
  return std::nextafter(d, std::numeric_limits<double>::infinity());
}

double GaussianRational::abs_upper() const {
  if (is_zero()) return 0.0;
  double m = std::hypot(uec::abs_upper(re_), uec::abs_upper(im_));
  return m * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
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
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  mpq_class n = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

}  // namespace uec
