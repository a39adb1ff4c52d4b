#include "uec/runge.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace uec {

namespace {

using cd = std::complex<double>;

// sum_{k>d} x^k / k!, rounded up.
double factorial_tail(double x, int d) {
  if (x == 0.0) return 0.0;
  int k = d + 1;
  double term = std::exp(k * std::log(x) - std::lgamma(k + 1.0));
  double sum = 0.0;
  while (true) {
    sum += term;
    double next = term * x / (k + 1);
    // Once k+2 >= 2x the remaining terms shrink at least geometrically by 1/2.
    if (k + 2 >= 2.0 * x && next <= sum * 1e-17) {
      sum += 2.0 * next;
      break;
    }
    term = next;
    ++k;
    if (k > 100000) return std::numeric_limits<double>::infinity();
  }
  return sum * (1.0 + 1e-12);
}

EntireComponent taylor_family(std::string label, cd a, cd b, std::function<cd(int)> pattern,
                              std::function<cd(cd)> value) {
  EntireComponent c;
  c.label = std::move(label);
  c.coefficient = [a, b, pattern](int d) { return b * pattern(d) * std::pow(a, d) / std::exp(std::lgamma(d + 1.0)); };
  c.majorant = [a, b](int d) {
    return std::abs(b) * std::exp(d * std::log(std::abs(a)) - std::lgamma(d + 1.0)) * (1.0 + 1e-12);
  };
  if (std::abs(a) == 0.0) {
    c.majorant = [b](int d) { return d == 0 ? std::abs(b) : 0.0; };
  }
  c.tail_bound = [a, b](int d, double N) { return std::abs(b) * factorial_tail(std::abs(a) * N, d); };
  c.value = std::move(value);
  return c;
}

}  // namespace

EntireComponent constant_component(cd b) { return polynomial_component({b}); }

EntireComponent polynomial_component(std::vector<cd> coeffs) {
  EntireComponent c;
  c.label = "polynomial";
  c.coefficient = [coeffs](int d) { return d < static_cast<int>(coeffs.size()) ? coeffs[d] : cd(0.0); };
  c.majorant = [coeffs](int d) { return d < static_cast<int>(coeffs.size()) ? std::abs(coeffs[d]) : 0.0; };
  c.tail_bound = [coeffs](int d, double N) {
    double s = 0.0;
    for (int k = d + 1; k < static_cast<int>(coeffs.size()); ++k) s += std::abs(coeffs[k]) * std::pow(N, k);
    return s * (1.0 + 1e-12);
  };
  c.value = [coeffs](cd z) {
    cd acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  return c;
}

EntireComponent exp_component(cd a, cd b) {
  return taylor_family(
      "exp", a, b, [](int) { return cd(1.0); }, [a, b](cd z) { return b * std::exp(a * z); });
}

EntireComponent sin_component(cd a, cd b) {
  return taylor_family(
      "sin", a, b,
      [](int d) {
        if (d % 2 == 0) return cd(0.0);
        return cd(((d - 1) / 2) % 2 == 0 ? 1.0 : -1.0);
      },
      [a, b](cd z) { return b * std::sin(a * z); });
}

EntireComponent cos_component(cd a, cd b) {
  return taylor_family(
      "cos", a, b,
      [](int d) {
        if (d % 2 != 0) return cd(0.0);
        return cd((d / 2) % 2 == 0 ? 1.0 : -1.0);
      },
      [a, b](cd z) { return b * std::cos(a * z); });
}

Eigen::VectorXcd EntireCurveSpec::value(cd z) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(components.size()));
  for (std::size_t j = 0; j < components.size(); ++j) v[static_cast<Eigen::Index>(j)] = components[j].value(z);
  return v;
}

double mu_for_epsilon(double eps) {
  if (!(eps > 0.0) || eps > std::numbers::pi / 2) throw std::domain_error("mu_for_epsilon: eps must lie in (0, pi/2]");
  return std::sin(eps) / 2.0;
}

DegreeBump degree_bump(const GPoly& p0, Degree others_maxdeg, double N, double budget) {
  if (p0.is_zero()) throw std::domain_error("degree_bump: p0 must be nonzero");
  if (!(budget > 0.0)) throw std::domain_error("degree_bump: budget must be positive");
  const std::size_t d0 = p0.degree().value();
  DegreeBump out{p0, 0, 0};
  if (others_maxdeg.is_minus_infinity() || others_maxdeg.value() < d0) return out;
  out.Q = others_maxdeg.value() + 1 - d0;

  const double sup = sup_bound_on_disc(p0, N);
  const auto Q = static_cast<double>(out.Q);
  long M = 2;
  while (!(sup * std::expm1(Q * std::log1p(N / static_cast<double>(M))) < budget)) {
    if (M > (std::numeric_limits<long>::max() >> 2)) throw std::overflow_error("degree_bump: M overflow");
    M *= 2;
  }
  out.M = M;

  GPoly factor = GPoly::constant(1);
  GPoly shift({GaussianRational(M), GaussianRational(1)});
  for (std::size_t q = 0; q < out.Q; ++q) factor = factor * shift;
  mpz_class MQ;
  mpz_ui_pow_ui(MQ.get_mpz_t(), static_cast<unsigned long>(M), static_cast<unsigned long>(out.Q));
  out.poly = p0 * factor * GaussianRational(mpq_class(mpz_class(1), MQ));
  return out;
}

std::vector<cd> disc_grid(double N) {
  const int steps = 2 * static_cast<int>(std::ceil(8.0 * N)) + 1;
  std::vector<cd> pts;
  for (int i = 0; i < steps; ++i) {
    double x = -N + 2.0 * N * i / (steps - 1);
    for (int j = 0; j < steps; ++j) {
      double y = -N + 2.0 * N * j / (steps - 1);
      if (x * x + y * y <= N * N) pts.emplace_back(x, y);
    }
  }
  return pts;
}

RungeResult rationalize(const EntireCurveSpec& f, double N, double eps) {
  const int n = f.dimension();
  if (n < 1) throw std::invalid_argument("rationalize: target needs at least two components");
  if (!(N >= 1.0)) throw std::invalid_argument("rationalize: N must be >= 1");
  if (!(f.sigma > 0.0)) throw std::invalid_argument("rationalize: sigma must be positive");
  const double mu = mu_for_epsilon(eps);

  const auto grid = disc_grid(N);
  for (const auto& z : grid) {
    if (f.value(z).squaredNorm() < f.sigma * f.sigma) {
      std::ostringstream os;
      os << "target violates its certified lower bound sigma = " << f.sigma << " at z = " << z;
      throw RungeError(os.str());
    }
  }
  for (const auto& c : f.components) {
    for (int d = 0; d <= 40; ++d) {
      if (std::abs(c.coefficient(d)) > c.majorant(d) * (1.0 + 1e-12) + 1e-300) {
        throw RungeError("majorant rule of component '" + c.label + "' fails at degree " + std::to_string(d));
      }
    }
  }

  const double scale = 1.0 / f.sigma;
  const double root = std::sqrt(n + 1.0);
  const double piece = mu / (4.0 * root) * (1.0 - 1e-9);

  std::vector<GPoly> polys;
  RungeResult res{RationalCurve({GPoly::constant(1), GPoly()}), {}, {}, {}, mu, 0.0, {}, grid.size()};
  for (const auto& c : f.components) {
    int d = 0;
    while (!(scale * c.tail_bound(d, N) < piece)) {
      if (++d > 400) throw RungeError("majorant of component '" + c.label + "' never meets the tail budget");
    }
    double S = 0.0;
    for (int k = 0; k <= d; ++k) S += std::pow(N, k);
    // Rounding each part to 1/(2D) gives a sup error <= sqrt(2) S / (2D).
    mpz_class D = 1;
    while (std::sqrt(2.0) * S / (2.0 * D.get_d()) > piece) D *= 2;
    std::vector<GaussianRational> coeffs;
    for (int k = 0; k <= d; ++k) coeffs.push_back(GaussianRational::round_to(scale * c.coefficient(k), D));
    polys.emplace_back(std::move(coeffs));
    res.taylor_degrees.push_back(static_cast<std::size_t>(d));
    res.denominators.push_back(D.get_str());
  }

  Degree others = Degree::minus_infinity();
  for (std::size_t j = 1; j < polys.size(); ++j) others = std::max(others, polys[j].degree());
  double bump_budget = mu / (2.0 * root) * (1.0 - 1e-9);
  if (polys[0].is_zero()) {
    // Any nonzero constant below half the budget keeps the error within bounds.
    mpz_class D = 1;
    while (1.0 / D.get_d() >= bump_budget / 2.0) D *= 2;
    polys[0] = GPoly::constant(GaussianRational(mpq_class(mpz_class(1), D)));
    bump_budget /= 2.0;
  }
  res.bump = degree_bump(polys[0], others, N, bump_budget);
  polys[0] = res.bump.poly;
  res.curve = RationalCurve(std::move(polys));

  for (const auto& z : grid) {
    double dist = fs_distance(eval_homog(res.curve, z), ProjPoint(f.value(z)));
    if (dist > res.max_grid_distance) {
      res.max_grid_distance = dist;
      res.worst_point = z;
    }
  }
  if (!(res.max_grid_distance < eps)) {
    std::ostringstream os;
    os << "grid verification failed: FS distance " << res.max_grid_distance << " >= eps " << eps << " at z = "
       << res.worst_point;
    throw RungeError(os.str());
  }
  return res;
}

}  // namespace uec
