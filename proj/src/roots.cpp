#include "uec/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace uec {

namespace {

using cd = std::complex<double>;

double eval_scale(const CPoly& p, cd z) {
  double s = 0.0, pw = 1.0, az = std::abs(z);
  for (const auto& c : p.coeffs()) {
    s += std::abs(c) * pw;
    pw *= az;
  }
  return s;
}

// Fujiwara bound 2 max |c_{d-j}/c_d|^{1/j}.
double fujiwara_bound(const CPoly& p) {
  const auto& c = p.coeffs();
  const std::size_t d = c.size() - 1;
  double lc = std::abs(c.back());
  double b = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    double r = std::abs(c[d - j]) / lc;
    if (j == d) r /= 2.0;
    if (r > 0.0) b = std::max(b, std::pow(r, 1.0 / static_cast<double>(j)));
  }
  return 2.0 * b;
}

}  // namespace

std::vector<cd> aberth_roots(const CPoly& p, const RootOptions& opt) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  const std::size_t d = p.coeffs().size() - 1;
  if (d == 0) return {};
  if (d == 1) return {-p.coeffs()[0] / p.coeffs()[1]};

  const double radius = std::max(fujiwara_bound(p), 1e-3);
  const cd center = -p.coeffs()[d - 1] / (p.coeffs()[d] * static_cast<double>(d));
  Eigen::VectorXcd z(static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + opt.start_angle;
    z[static_cast<Eigen::Index>(k)] = center + std::polar(radius, ang);
  }

  bool converged = false;
  for (int it = 0; it < opt.max_iterations && !converged; ++it) {
    converged = true;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      auto [v, dv] = eval_with_derivative(p, z[k]);
      if (v == cd(0.0)) continue;
      cd ratio = v / dv;
      cd repulsion = 0.0;
      for (Eigen::Index j = 0; j < z.size(); ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      cd step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[k] -= step;
      if (std::abs(step) > 1e-14 * std::max(1.0, std::abs(z[k]))) converged = false;
    }
  }

  // Newton polish; simple roots converge quadratically.
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    for (int it = 0; it < 3; ++it) {
      auto [v, dv] = eval_with_derivative(p, z[k]);
      if (v == cd(0.0) || dv == cd(0.0)) break;
      cd s = v / dv;
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) break;
      z[k] -= s;
    }
  }

  std::vector<cd> out(z.begin(), z.end());
  for (const auto& r : out) {
    double res = std::abs(p(r));
    double scale = eval_scale(p, r);
    if (!(res <= opt.tol * scale)) {
      std::ostringstream os;
      os << "root finder did not converge: residual " << res << " at " << r << " exceeds tolerance "
         << opt.tol << " x scale " << scale << " (degree " << d << ")";
      throw RootFindingError(os.str());
    }
  }
  return out;
}

std::vector<Root> roots_numeric(const GPoly& p, const RootOptions& opt) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Root> out;
  auto factors = square_free_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() == Degree(0)) continue;
    for (const auto& r : aberth_roots(to_cpoly(factors[i]), opt)) {
      out.push_back({r, static_cast<int>(i + 1)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace uec
