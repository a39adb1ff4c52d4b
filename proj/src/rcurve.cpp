#include "uec/rcurve.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "uec/rational_eval.hpp"

namespace uec {

RationalCurve::RationalCurve(std::vector<GPoly> polys) : polys_(std::move(polys)) {
  if (polys_.size() < 2) throw InvalidCurve("a rational curve needs n+1 >= 2 polynomials");
  if (polys_[0].is_zero()) throw InvalidCurve("p_0 must be nonzero");
  for (std::size_t j = 1; j < polys_.size(); ++j) {
    if (!(polys_[0].degree() > polys_[j].degree())) {
      std::ostringstream os;
      os << "curve is not in the admissible set: deg p_0 = " << polys_[0].degree().value() << " does not exceed deg p_"
         << j;
      throw InvalidCurve(os.str());
    }
  }
  GPoly g = polys_[0];
  for (std::size_t j = 1; j < polys_.size(); ++j) {
    if (!polys_[j].is_zero()) g = gcd(g, polys_[j]);
  }
  g = monic(g);
  for (const auto& p : polys_) reduced_.push_back(exact_div(p, g));
}

std::vector<RationalFunction> affine_components(const RationalCurve& c) {
  std::vector<RationalFunction> out;
  for (std::size_t j = 1; j < c.polys().size(); ++j) {
    auto [n, d] = lowest_terms(c.polys()[j], c.polys()[0]);
    out.push_back({std::move(n), std::move(d)});
  }
  return out;
}

PoleCount pole_count(const RationalCurve& c) {
  PoleCount pc;
  for (const auto& g : affine_components(c)) {
    std::size_t nj = g.den.degree().value();
    pc.per_component.push_back(nj);
    pc.total += nj;
  }
  return pc;
}

GPoly common_denominator(const RationalCurve& c) {
  GPoly d = GPoly::constant(1);
  for (const auto& g : affine_components(c)) d = lcm(d, g.den);
  return d;
}

DecayCertificate decay_certificate(const RationalCurve& c, int k) {
  if (k < 1) throw std::invalid_argument("certificate index must be positive");
  auto comps = affine_components(c);

  double delta = 2.0;
  for (const auto& g : comps) {
    if (g.den.degree() >= Degree(1)) delta = std::max(delta, 2.0 * cauchy_root_bound(g.den));
  }
  // |den(z)| >= |z|^d / 2 for |z| >= 1 + 2 max_j |c_j| (monic den).
  for (const auto& g : comps) {
    if (g.den.degree() < Degree(1)) continue;
    double tail = 0.0;
    for (std::size_t j = 0; j + 1 < g.den.coeffs().size(); ++j) tail = std::max(tail, g.den.coeffs()[j].abs_upper());
    while (delta < 1.0 + 2.0 * tail) delta *= 2.0;
  }

  double C = 0.0;
  for (const auto& g : comps) {
    if (g.num.is_zero()) continue;
    auto dn = static_cast<double>(g.num.degree().value());
    auto dd = static_cast<double>(g.den.degree().value());
    C = std::max(C, 2.0 * coeff_abs_sum(g.num) * std::pow(delta, dn + 1.0 - dd));
  }
  if (C == 0.0) C = 1.0;
  C *= 1.0 + 1e-12;

  DecayCertificate cert{delta, C, k, delta + std::ldexp(C, k)};
  if (!std::isfinite(cert.R)) throw CertificateError("certificate radius overflows double range");
  if (std::size_t bad = validate_certificate(c, cert); bad > 0) {
    std::ostringstream os;
    os << "decay certificate failed numeric validation at " << bad << " sample points";
    throw CertificateError(os.str());
  }
  return cert;
}

std::size_t validate_certificate(const RationalCurve& c, const DecayCertificate& cert) {
  std::vector<std::pair<CPoly, CPoly>> comps;
  for (const auto& g : affine_components(c)) comps.emplace_back(to_cpoly(g.num), to_cpoly(g.den));
  std::size_t bad = 0;
  for (int i = 0; i < 256; ++i) {
    double r = cert.delta * std::pow(100.0, (i + 1) / 256.0);
    for (int a = 0; a < 16; ++a) {
      auto z = std::polar(r, 2.0 * std::numbers::pi * a / 16.0 + 0.1);
      for (const auto& [num, den] : comps) {
        if (!(std::abs(eval_rational(num, den, z)) < cert.C / r)) ++bad;
      }
    }
  }
  return bad;
}

ProjPoint eval_homog(const RationalCurve& c, std::complex<double> z) {
  std::vector<CPoly> red;
  red.reserve(c.reduced().size());
  for (const auto& p : c.reduced()) red.push_back(to_cpoly(p));
  return ProjPoint(eval_homog_lift(red, z));
}

std::vector<Root> pole_locations(const RationalCurve& c, const RootOptions& opt) {
  GPoly d = common_denominator(c);
  if (d.degree() < Degree(1)) return {};
  return roots_numeric(d, opt);
}

}  // namespace uec
