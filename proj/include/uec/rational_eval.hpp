#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "uec/poly.hpp"

namespace uec {

/// Horner on the reversed coefficients: returns sum_k c_k w^{d-k}, i.e.
/// p(z) / z^d at w = 1/z.
inline std::complex<double> eval_reversed(const CPoly& p, std::complex<double> w) {
  std::complex<double> acc = 0.0;
  for (const auto& c : p.coeffs()) acc = acc * w + c;
  return acc;
}

/// num(z)/den(z) without overflow for large |z|.
inline std::complex<double> eval_rational(const CPoly& num, const CPoly& den, std::complex<double> z) {
  if (num.is_zero()) return 0.0;
  if (std::abs(z) <= 1.0) return num(z) / den(z);
  auto w = 1.0 / z;
  auto dn = static_cast<int>(num.coeffs().size()) - 1;
  auto dd = static_cast<int>(den.coeffs().size()) - 1;
  return std::pow(z, dn - dd) * eval_reversed(num, w) / eval_reversed(den, w);
}

/// [p_0(z) : ... : p_n(z)] rescaled by z^{-max deg} when |z| > 1.
inline Eigen::VectorXcd eval_homog_lift(const std::vector<CPoly>& polys, std::complex<double> z) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(polys.size()));
  if (std::abs(z) <= 1.0) {
    for (std::size_t j = 0; j < polys.size(); ++j) v[static_cast<Eigen::Index>(j)] = polys[j](z);
    return v;
  }
  int top = 0;
  for (const auto& p : polys) top = std::max(top, static_cast<int>(p.coeffs().size()) - 1);
  auto w = 1.0 / z;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (polys[j].is_zero()) {
      v[static_cast<Eigen::Index>(j)] = 0.0;
      continue;
    }
    int dj = static_cast<int>(polys[j].coeffs().size()) - 1;
    v[static_cast<Eigen::Index>(j)] = eval_reversed(polys[j], w) * std::pow(w, top - dj);
  }
  return v;
}

}  // namespace uec
