#include "uec/gpoly.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uec {

GPoly monic(const GPoly& p) {
  if (p.is_zero()) return p;
  GaussianRational inv = GaussianRational(1) / p.leading();
  return p * inv;
}

GPoly gcd(const GPoly& a, const GPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  GPoly x = a, y = b;
  while (!y.is_zero()) {
    GPoly r = divmod(x, y).second;
    x = std::move(y);
    // Keeping the remainder monic holds coefficient growth in check.
    y = monic(r);
  }
  return monic(x);
}

GPoly exact_div(const GPoly& a, const GPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

GPoly lcm(const GPoly& a, const GPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return monic(exact_div(a * b, gcd(a, b)));
}

std::pair<GPoly, GPoly> lowest_terms(const GPoly& num, const GPoly& den) {
  if (den.is_zero()) throw std::domain_error("lowest_terms: zero denominator");
  if (num.is_zero()) return {GPoly(), GPoly::constant(1)};
  GPoly g = gcd(num, den);
  GPoly n = exact_div(num, g);
  GPoly d = exact_div(den, g);
  GaussianRational unit = d.leading();
  return {n * (GaussianRational(1) / unit), monic(d)};
}

double cauchy_root_bound(const GPoly& p) {
  if (p.is_zero() || p.degree() < Degree(1)) {
    throw std::domain_error("cauchy_root_bound needs a polynomial of degree >= 1");
  }
  const auto& c = p.coeffs();
  mpq_class lc_norm = c.back().norm();
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < c.size(); ++j) {
    if (c[j].is_zero()) continue;
    // |c_j|/|lc| = sqrt(norm_j / norm_lc), the ratio taken exactly first.
    mpq_class ratio = c[j].norm() / lc_norm;
    double r = std::sqrt(abs_upper(ratio));
    worst = std::max(worst, std::nextafter(r, std::numeric_limits<double>::infinity()));
  }
  if (worst == 0.0) return 1.0;
  return std::nextafter(1.0 + worst, std::numeric_limits<double>::infinity());
}

CPoly to_cpoly(const GPoly& p) {
  return p.map([](const GaussianRational& x) {
    auto z = x.to_complex();
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::overflow_error("coefficient exceeds double range");
    }
    return z;
  });
}

double coeff_abs_sum(const GPoly& p) { return sup_bound_on_disc(p, 1.0); }

double sup_bound_on_disc(const GPoly& p, double radius) {
  double acc = 0.0;
  double pw = 1.0;
  for (const auto& c : p.coeffs()) {
    acc += c.abs_upper() * pw;
    pw *= radius;
  }
  return acc * (1.0 + 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(p.coeffs().size() + 1));
}

std::vector<GPoly> square_free_decomposition(const GPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
  std::vector<GPoly> out;
  if (p.degree() < Degree(1)) return out;
  GPoly dp = p.derivative();
  GPoly a = gcd(p, dp);
  GPoly b = exact_div(p, a);
  GPoly c = exact_div(dp, a);
  GPoly d = c - b.derivative();
  while (b.degree() > Degree(0)) {
    GPoly f = gcd(b, d);
    b = exact_div(b, f);
    c = exact_div(d, f);
    d = c - b.derivative();
    out.push_back(monic(f));
  }
  while (!out.empty() && out.back().degree() == Degree(0)) out.pop_back();
  return out;
}

GPoly parse_gpoly(const std::vector<std::string>& coeffs) {
  std::vector<GaussianRational> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) v.push_back(GaussianRational::parse(s));
  return GPoly(std::move(v));
}

std::vector<std::string> format_gpoly(const GPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  if (out.empty()) out.push_back("0");
  return out;
}

std::string pretty(const GPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c[k] == GaussianRational(1);
    if (k == 0 || !unit) {
      std::string t = c[k].str();
      bool compound = t.find_first_of("+-", 1) != std::string::npos;
      os << (compound ? "(" + t + ")" : t);
    }
    if (k > 0) {
      if (!unit) os << "*";
      os << "z";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace uec
