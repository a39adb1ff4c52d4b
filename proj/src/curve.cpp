#include "uec/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "uec/csv.hpp"
#include "uec/rational_eval.hpp"
#include "uec/runge.hpp"

namespace uec {

namespace {

using cd = std::complex<double>;

CPoly derivative_numerator(const GPoly& num, const GPoly& den) {
  return to_cpoly(num.derivative() * den - num * den.derivative());
}

std::vector<Pole> to_poles(const std::vector<Root>& roots, cd shift) {
  std::vector<Pole> out;
  for (const auto& r : roots) out.push_back(Pole{r.value + shift, r.multiplicity});
  return out;
}

}  // namespace

RationalMap::RationalMap(const std::vector<GPoly>& polys) {
  if (polys.size() < 2) throw InvalidCurve("rational map needs at least two coordinates");
  if (polys[0].is_zero()) throw InvalidCurve("rational map needs p_0 != 0");
  GPoly g = polys[0];
  for (const auto& p : polys) {
    if (!p.is_zero()) g = gcd(g, p);
  }
  std::vector<GPoly> red;
  for (const auto& p : polys) red.push_back(exact_div(p, g));

  GPoly d = GPoly::constant(1);
  std::vector<std::pair<GPoly, GPoly>> parts;
  for (std::size_t j = 1; j < red.size(); ++j) {
    auto [num, den] = red[j].is_zero() ? std::pair{GPoly(), GPoly::constant(1)} : lowest_terms(red[j], red[0]);
    d = lcm(d, den);
    parts.emplace_back(num, den);
  }
  lift_.push_back(to_cpoly(d));
  dlift_.push_back(to_cpoly(d.derivative()));
  for (const auto& [num, den] : parts) {
    num_.push_back(to_cpoly(num));
    den_.push_back(to_cpoly(den));
    dnum_.push_back(derivative_numerator(num, den));
    dden_.push_back(to_cpoly(den * den));
    GPoly L = num * exact_div(d, den);
    lift_.push_back(to_cpoly(L));
    dlift_.push_back(to_cpoly(L.derivative()));
  }
  if (d.degree() > Degree(0)) poles_ = to_poles(roots_numeric(d), 0.0);
}

Eigen::VectorXcd RationalMap::affine(cd z) const {
  for (const auto& p : poles_) {
    if (std::abs(z - p.z) < UniversalCurve::kPoleTolerance) throw PoleProximityError("evaluation at a pole");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(num_.size()));
  for (std::size_t j = 0; j < num_.size(); ++j) v[static_cast<Eigen::Index>(j)] = eval_rational(num_[j], den_[j], z);
  return v;
}

Frame RationalMap::frame(cd z) const {
  Frame f{Eigen::VectorXcd(static_cast<Eigen::Index>(lift_.size())),
          Eigen::VectorXcd(static_cast<Eigen::Index>(lift_.size()))};
  for (std::size_t j = 0; j < lift_.size(); ++j) {
    auto [v, dv] = eval_with_derivative(lift_[j], z);
    f.F[static_cast<Eigen::Index>(j)] = v;
    f.dF[static_cast<Eigen::Index>(j)] = dv;
  }
  return f;
}

UniversalCurve::UniversalCurve(Schedule s) : s_(std::move(s)) {
  if (!s_.resolved()) throw ScheduleError("universal curve needs a resolved schedule");
  for (std::size_t i = 0; i < s_.blocks.size(); ++i) {
    const Block& b = s_.blocks[i];
    BlockData bd;
    bd.k = i + 1;
    bd.center = b.center();
    bd.R = b.cert.R;
    GPoly d = common_denominator(b.curve);
    for (const auto& rf : affine_components(b.curve)) {
      bd.num.push_back(to_cpoly(rf.num));
      bd.den.push_back(to_cpoly(rf.den));
      bd.dnum.push_back(derivative_numerator(rf.num, rf.den));
      bd.dden.push_back(to_cpoly(rf.den * rf.den));
      GPoly L = rf.num * exact_div(d, rf.den);
      bd.lifted.push_back(to_cpoly(L));
      bd.dlifted.push_back(to_cpoly(L.derivative()));
    }
    bd.lcd = to_cpoly(d);
    bd.dlcd = to_cpoly(d.derivative());
    if (d.degree() > Degree(0)) bd.local_poles = to_poles(pole_locations(b.curve), 0.0);
    for (const auto& p : bd.local_poles) poles_.push_back(Pole{p.z + bd.center, p.multiplicity});
    blocks_.push_back(std::move(bd));
  }
}

void UniversalCurve::check_pole_distance(cd z) const {
  for (const auto& b : blocks_) {
    cd w = z - b.center;
    if (std::abs(w) > b.R) continue;
    for (const auto& p : b.local_poles) {
      if (std::abs(w - p.z) < kPoleTolerance) {
        std::ostringstream os;
        os << "z = " << z << " lies within " << kPoleTolerance << " of a pole of block " << b.k;
        throw PoleProximityError(os.str());
      }
    }
  }
}

Eigen::VectorXcd UniversalCurve::block_value(std::size_t k, cd z) const {
  const BlockData& b = blocks_.at(k - 1);
  cd w = z - b.center;
  Eigen::VectorXcd v(s_.n);
  for (int j = 0; j < s_.n; ++j) v[j] = eval_rational(b.num[j], b.den[j], w);
  return v;
}

Eigen::VectorXcd UniversalCurve::block_derivative(std::size_t k, cd z) const {
  const BlockData& b = blocks_.at(k - 1);
  cd w = z - b.center;
  Eigen::VectorXcd v(s_.n);
  for (int j = 0; j < s_.n; ++j) v[j] = eval_rational(b.dnum[j], b.dden[j], w);
  return v;
}

Eigen::VectorXcd UniversalCurve::eval_affine(cd z) const {
  check_pole_distance(z);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s_.n);
  for (std::size_t k = 1; k <= blocks_.size(); ++k) v += block_value(k, z);
  return v;
}

Eigen::VectorXcd UniversalCurve::eval_derivative(cd z) const {
  check_pole_distance(z);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s_.n);
  for (std::size_t k = 1; k <= blocks_.size(); ++k) v += block_derivative(k, z);
  return v;
}

Eigen::VectorXcd UniversalCurve::error_term(std::size_t k, cd z) const {
  if (k < 1 || k > blocks_.size()) throw std::out_of_range("error_term: block index");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s_.n);
  for (std::size_t l = 1; l <= blocks_.size(); ++l) {
    if (l != k) v += block_value(l, z);
  }
  return v;
}

Eigen::VectorXcd UniversalCurve::error_term_derivative(std::size_t k, cd z) const {
  if (k < 1 || k > blocks_.size()) throw std::out_of_range("error_term_derivative: block index");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s_.n);
  for (std::size_t l = 1; l <= blocks_.size(); ++l) {
    if (l != k) v += block_derivative(l, z);
  }
  return v;
}

Frame UniversalCurve::frame(cd z) const {
  const Eigen::Index n = s_.n;
  Frame f{Eigen::VectorXcd(n + 1), Eigen::VectorXcd(n + 1)};
  auto k = in_disc(z);
  if (k && !blocks_[*k - 1].local_poles.empty()) {
    const BlockData& b = blocks_[*k - 1];
    cd w = z - b.center;
    auto [d, dd] = eval_with_derivative(b.lcd, w);
    Eigen::VectorXcd e = error_term(*k, z);
    Eigen::VectorXcd de = error_term_derivative(*k, z);
    f.F[0] = d;
    f.dF[0] = dd;
    for (Eigen::Index j = 0; j < n; ++j) {
      auto [L, dL] = eval_with_derivative(b.lifted[j], w);
      f.F[j + 1] = L + d * e[j];
      f.dF[j + 1] = dL + dd * e[j] + d * de[j];
    }
    return f;
  }
  f.F[0] = 1.0;
  f.dF[0] = 0.0;
  f.F.tail(n) = eval_affine(z);
  f.dF.tail(n) = eval_derivative(z);
  return f;
}

ProjPoint UniversalCurve::eval_proj(cd z) const { return ProjPoint(frame(z).F); }

std::optional<std::size_t> UniversalCurve::in_disc(cd z) const {
  for (const auto& b : blocks_) {
    if (std::abs(z - b.center) <= b.R) return b.k;
  }
  return std::nullopt;
}

std::size_t UniversalCurve::nearest_block(cd z) const {
  std::size_t best = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) {
    double g = std::abs(z - b.center) - b.R;
    if (g < gap) {
      gap = g;
      best = b.k;
    }
  }
  return best;
}

double UniversalCurve::pole_distance(cd z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : poles_) d = std::min(d, std::abs(z - p.z));
  return d;
}

double UniversalCurve::tail_bound() const { return std::ldexp(1.0, -static_cast<int>(blocks_.size())); }

OutsideDiscReport outside_disc_bound_check(const UniversalCurve& u, const std::vector<cd>& samples) {
  OutsideDiscReport rep;
  for (const auto& z : samples) {
    if (u.in_disc(z)) {
      ++rep.rejected;
      continue;
    }
    ++rep.evaluated;
    double m = u.dimension() > 0 ? u.eval_affine(z).cwiseAbs().maxCoeff() : 0.0;
    if (m > rep.max_abs) {
      rep.max_abs = m;
      rep.worst_point = z;
    }
    if (!(m < 1.0)) ++rep.violations;
  }
  return rep;
}

std::vector<cd> outside_disc_samples(const UniversalCurve& u, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double outer = 10.0;
  for (const auto& b : u.blocks()) outer = std::max(outer, 4.0 * (std::abs(b.center) + b.R));
  const double lo = std::log(0.5);
  const double hi = std::log(outer);
  std::vector<cd> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 1000) throw std::runtime_error("outside_disc_samples: rejection sampling stalled");
    cd z;
    double theta = 2.0 * std::numbers::pi * unit(rng);
    if (!u.blocks().empty() && out.size() % 4 == 3) {
      // a ring just outside one of the discs
      const auto& b = u.blocks()[static_cast<std::size_t>(unit(rng) * static_cast<double>(u.blocks().size())) %
                                 u.blocks().size()];
      double gap = std::pow(10.0, -6.0 * unit(rng));
      z = b.center + std::polar(b.R * (1.0 + gap), theta);
    } else {
      z = std::polar(std::exp(lo + (hi - lo) * unit(rng)), theta);
    }
    if (!u.in_disc(z)) out.push_back(z);
  }
  return out;
}

std::vector<cd> disc_grid_points(cd center, double radius, int side) {
  if (side < 2) throw std::invalid_argument("disc_grid_points: side must be >= 2");
  std::vector<cd> pts;
  for (int i = 0; i < side; ++i) {
    double x = -radius + 2.0 * radius * i / (side - 1);
    for (int j = 0; j < side; ++j) {
      double y = -radius + 2.0 * radius * j / (side - 1);
      cd z = center + cd(x, y);
      // tested after translation so the rounded point itself is in the disc
      if (std::abs(z - center) <= radius) pts.push_back(z);
    }
  }
  return pts;
}

ErrorTermReport error_term_check(const UniversalCurve& u, std::size_t k, int side) {
  const BlockData& b = u.blocks().at(k - 1);
  ErrorTermReport rep;
  rep.k = k;
  rep.bound = std::ldexp(1.0, 1 - static_cast<int>(k));
  for (const auto& z : disc_grid_points(b.center, b.R, side)) {
    ++rep.points;
    double m = u.error_term(k, z).cwiseAbs().maxCoeff();
    rep.max_abs = std::max(rep.max_abs, m);
    if (!(m < rep.bound)) ++rep.violations;
  }
  return rep;
}

UniversalityReport universality_check(const UniversalCurve& u, std::size_t k, double N, double eps, int side) {
  const Block& blk = u.schedule().blocks.at(k - 1);
  const BlockData& b = u.blocks().at(k - 1);
  UniversalityReport rep;
  rep.k = k;
  rep.N = N;
  rep.eps = eps;
  rep.delta = mu_for_epsilon(eps / 2.0);

  const auto grid = disc_grid_points(0.0, N, side);
  rep.sigma = std::numeric_limits<double>::infinity();
  for (const auto& z : grid) rep.sigma = std::min(rep.sigma, eval_homog(blk.curve, z).homog().norm());
  rep.M = sup_bound_on_disc(blk.curve.reduced()[0], N) / rep.sigma;

  for (const auto& z : disc_grid_points(b.center, b.R, side)) {
    rep.max_error_term = std::max(rep.max_error_term, u.error_term(k, z).cwiseAbs().maxCoeff());
  }
  rep.precondition = b.R > N && rep.max_error_term <= rep.delta / rep.M;

  for (const auto& z : grid) {
    double d = fs_distance(u.eval_proj(z + b.center), eval_homog(blk.curve, z));
    if (d > rep.sup_distance) {
      rep.sup_distance = d;
      rep.worst_point = z;
    }
  }
  return rep;
}

void write_point_csv(std::ostream& os, const UniversalCurve& u, const std::vector<cd>& points) {
  os << "z_re,z_im";
  for (int j = 1; j <= u.dimension(); ++j) os << ",abs_h_" << j;
  os << ",in_disc,nearest_block\n";
  for (const auto& z : points) {
    os << format_double(z.real()) << ',' << format_double(z.imag());
    Eigen::VectorXd mags(u.dimension());
    if (u.pole_distance(z) >= UniversalCurve::kPoleTolerance) {
      mags = u.eval_affine(z).cwiseAbs();
    } else {
      Frame f = u.frame(z);
      double f0 = std::abs(f.F[0]);
      for (int j = 0; j < u.dimension(); ++j) {
        mags[j] = f0 == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(f.F[j + 1]) / f0;
      }
    }
    for (int j = 0; j < u.dimension(); ++j) os << ',' << format_double(mags[j]);
    os << ',' << (u.in_disc(z) ? 1 : 0) << ',' << u.nearest_block(z) << '\n';
  }
}

}  // namespace uec
