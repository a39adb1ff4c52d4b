#pragma once

#include <algorithm>
#include <compare>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uec/exactnum.hpp"

namespace uec {

/// Polynomial degree with an explicit minus-infinity marker for the zero polynomial.
class Degree {
 public:
  constexpr explicit Degree(std::size_t d) : value_(d), finite_(true) {}
  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_minus_infinity() const { return !finite_; }
  std::size_t value() const {
    if (!finite_) throw std::logic_error("degree of the zero polynomial has no finite value");
    return value_;
  }

  friend constexpr bool operator==(const Degree& a, const Degree& b) {
    return a.finite_ == b.finite_ && a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr Degree() = default;
  std::size_t value_ = 0;
  bool finite_ = false;
};

namespace detail {
inline bool scalar_is_zero(const GaussianRational& x) { return x.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
}  // namespace detail

/// Dense univariate polynomial, coefficients ascending by degree.
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
template <class Scalar>
class Poly {
 public:
  using scalar_type = Scalar;

  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(Scalar c) { return Poly(std::vector<Scalar>{std::move(c)}); }
  static Poly monomial(Scalar c, std::size_t d) {
    std::vector<Scalar> v(d + 1, Scalar(0));
    v[d] = std::move(c);
    return Poly(std::move(v));
  }
  /// The identity polynomial z.
  static Poly identity() { return monomial(Scalar(1), 1); }

  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(c_.size() - 1); }
  const Scalar& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }
  Scalar coeff(std::size_t d) const { return d < c_.size() ? c_[d] : Scalar(0); }

  /// Horner evaluation; T is any type closed under Scalar*T and T+T.
  template <class T>
  T operator()(const T& z) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + T(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<long>(k));
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::scalar_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Transforms every coefficient, e.g. exact -> floating point.
  template <class F>
  auto map(F&& f) const {
    using Out = std::decay_t<decltype(f(std::declval<const Scalar&>()))>;
    std::vector<Out> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(f(x));
    return Poly<Out>(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

/// Quotient and remainder with deg(rem) < deg(divisor).
template <class Scalar>
std::pair<Poly<Scalar>, Poly<Scalar>> divmod(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Scalar> rem = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  if (rem.size() <= db) return {Poly<Scalar>(), a};
  std::vector<Scalar> quot(rem.size() - db, Scalar(0));
  const Scalar& lc = b.leading();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (detail::scalar_is_zero(rem[k])) continue;
    Scalar q = rem[k] / lc;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs()[j];
    quot[k - db] = std::move(q);
  }
  rem.resize(db);
  return {Poly<Scalar>(std::move(quot)), Poly<Scalar>(std::move(rem))};
}

/// Evaluates p(z) and p'(z) in one Horner pass.
template <class Scalar, class T>
std::pair<T, T> eval_with_derivative(const Poly<Scalar>& p, const T& z) {
  T val(0), der(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    der = der * z + val;
    val = val * z + T(*it);
  }
  return {val, der};
}

using GPoly = Poly<GaussianRational>;
using CPoly = Poly<std::complex<double>>;

}  // namespace uec
