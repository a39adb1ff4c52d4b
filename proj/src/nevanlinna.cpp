#include "uec/nevanlinna.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "uec/csv.hpp"

namespace uec {

namespace {

using cd = std::complex<double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double nearest_pole(const std::vector<Pole>& poles, cd z) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : poles) d = std::min(d, std::abs(z - p.z));
  return d;
}

// Angular pieces of [0, 2pi) whose arc length stays below a quarter of the
// distance to the nearest pole (but never below 0.25).
std::vector<std::pair<double, double>> circle_pieces(double r, const std::vector<Pole>& poles) {
  std::vector<std::pair<double, double>> out;
  std::function<void(double, double, int)> split = [&](double a, double b, int depth) {
    double mid = 0.5 * (a + b);
    double d = nearest_pole(poles, std::polar(r, mid));
    if (depth < 60 && r * (b - a) > std::max(0.25, 0.25 * d)) {
      split(a, mid, depth + 1);
      split(mid, b, depth + 1);
    } else {
      out.emplace_back(a, b);
    }
  };
  for (int i = 0; i < 16; ++i) split(kTwoPi * i / 16.0, kTwoPi * (i + 1) / 16.0, 0);
  return out;
}

// Radial pieces of [lo, hi] refined near the pole moduli.
void radial_pieces(double lo, double hi, const std::vector<double>& moduli, std::vector<std::pair<double, double>>& out,
                   int depth = 0) {
  double mid = 0.5 * (lo + hi);
  double d = std::numeric_limits<double>::infinity();
  for (double m : moduli) d = std::min(d, std::abs(mid - m));
  if (depth < 60 && hi - lo > std::max(0.25, 0.25 * d)) {
    radial_pieces(lo, mid, moduli, out, depth + 1);
    radial_pieces(mid, hi, moduli, out, depth + 1);
  } else {
    out.emplace_back(lo, hi);
  }
}

// One 15-point Kronrod pass over [a, b] for an integrand that reports its own
// error. The result error is |K - G| plus the Kronrod-weighted integrand error.
template <class F>
Estimate kronrod_piece(F& f, double a, double b) {
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = Gauss::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0, carried = 0.0;
  for (std::size_t i = 0; i < xk.size(); ++i) {
    const int sides = i == 0 ? 1 : 2;
    for (int s = 0; s < sides; ++s) {
      Estimate e = f(s == 0 ? c + h * xk[i] : c - h * xk[i]);
      kron += wk[i] * e.value;
      carried += wk[i] * e.error;
      if (i % 2 == 0) gauss += wg[i / 2] * e.value;
    }
  }
  return Estimate{h * kron, std::abs(h) * (std::abs(kron - gauss) + carried)};
}

// Globally adaptive Gauss-Kronrod: the piece with the largest error estimate
// is bisected until the summed error falls below tol |I|, the worst piece
// reaches max_depth, or the evaluation budget runs out.
template <class F>
Estimate integrate_pieces(F&& f, const std::vector<std::pair<double, double>>& pieces, double tol, int max_depth) {
  struct Piece {
    double a, b;
    Estimate e;
    int depth;
    bool operator<(const Piece& o) const { return e.error < o.e.error; }
  };
  std::priority_queue<Piece> queue;
  Estimate total;
  for (const auto& [a, b] : pieces) {
    Piece p{a, b, kronrod_piece(f, a, b), 0};
    total.value += p.e.value;
    total.error += p.e.error;
    queue.push(p);
  }
  const std::size_t budget = 64 * pieces.size() + 2048;
  std::size_t used = pieces.size();
  while (!queue.empty() && total.error > tol * std::abs(total.value) && used < budget) {
    Piece worst = queue.top();
    if (worst.depth >= max_depth) break;
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    Piece left{worst.a, mid, kronrod_piece(f, worst.a, mid), worst.depth + 1};
    Piece right{mid, worst.b, kronrod_piece(f, mid, worst.b), worst.depth + 1};
    total.value += left.e.value + right.e.value - worst.e.value;
    total.error += left.e.error + right.e.error - worst.e.error;
    queue.push(left);
    queue.push(right);
    used += 2;
  }
  // Re-sum so the running updates leave no cancellation residue.
  total = Estimate{};
  for (; !queue.empty(); queue.pop()) {
    total.value += queue.top().e.value;
    total.error += queue.top().e.error;
  }
  return total;
}

// Mean of f over the circle |z| = r.
template <class F>
Estimate circle_mean(F&& f, double r, const std::vector<Pole>& poles, const QuadOptions& q) {
  Estimate e = integrate_pieces([&](double t) { return Estimate{f(std::polar(r, t)), 0.0}; },
                                circle_pieces(r, poles), q.tol, q.max_depth);
  e.value /= kTwoPi;
  e.error /= kTwoPi;
  return e;
}

// log sqrt(1 + |F_1..n|^2 / |F_0|^2) without overflow.
double half_log_ratio(const Frame& f) {
  double top = f.F.tail(f.F.size() - 1).norm();
  double bottom = std::abs(f.F[0]);
  if (top <= bottom) {
    double t = top / bottom;
    return 0.5 * std::log1p(t * t);
  }
  double t = bottom / top;
  return std::log(top) - std::log(bottom) + 0.5 * std::log1p(t * t);
}

}  // namespace

Estimate proximity(const MeromorphicCurve& c, double r, const QuadOptions& q) {
  if (!(r > 0.0)) throw std::domain_error("proximity: r must be positive");
  const auto& poles = c.poles();
  auto bracket = [&](cd z) {
    double v = half_log_ratio(c.frame(z));
    for (const auto& p : poles) v += p.multiplicity * std::log(std::abs(z - p.z));
    return v;
  };
  Estimate e = circle_mean(bracket, r, poles, q);
  for (const auto& p : poles) e.value -= p.multiplicity * std::log(std::max(r, std::abs(p.z)));
  return e;
}

double counting(const MeromorphicCurve& c, double r) {
  double N = 0.0;
  for (const auto& p : c.poles()) {
    double a = std::abs(p.z);
    if (a <= r) N += p.multiplicity * std::log(r / std::max(a, 1.0));
  }
  return N;
}

double characteristic_fmt(const MeromorphicCurve& c, double r, const QuadOptions& q) {
  if (!(r >= 1.0)) throw std::domain_error("characteristic_fmt: r must be >= 1");
  return proximity(c, r, q).value + counting(c, r) - proximity(c, 1.0, q).value;
}

Estimate characteristic_area(const MeromorphicCurve& c, double r, const QuadOptions& q) {
  if (!(r >= 1.0)) throw std::domain_error("characteristic_area: r must be >= 1");
  const auto& poles = c.poles();
  std::vector<double> moduli;
  for (const auto& p : poles) moduli.push_back(std::abs(p.z));

  auto radial = [&](double rho) {
    if (rho == 0.0) return Estimate{};
    Estimate e = circle_mean(
        [&](cd z) {
          Frame f = c.frame(z);
          return fs_pullback_density_homog(f.F, f.dF);
        },
        rho, poles, q);
    double scale = 2.0 * rho * std::log(r / std::max(rho, 1.0));
    return Estimate{scale * e.value, std::abs(scale) * e.error};
  };

  std::vector<std::pair<double, double>> pieces;
  radial_pieces(0.0, 1.0, moduli, pieces);
  if (r > 1.0) radial_pieces(1.0, r, moduli, pieces);

  return integrate_pieces(radial, pieces, q.tol, q.max_depth);
}

NudgedRadius nudge_radius(const MeromorphicCurve& c, double r) {
  NudgedRadius out{r, false};
  for (int pass = 0; pass < 16; ++pass) {
    bool hit = false;
    for (const auto& p : c.poles()) {
      if (std::abs(std::abs(p.z) - out.r) <= 1e-9 * std::max(1.0, out.r)) hit = true;
    }
    if (!hit) break;
    out.r += 1e-6 * out.r;
    out.nudged = true;
  }
  return out;
}

std::string LemmaBound::label() const {
  switch (tag) {
    case GrowthCase::BelowFirstDisc:
      return "below-first-disc";
    case GrowthCase::BetweenDiscs:
      return "between-discs-" + std::to_string(k);
    case GrowthCase::StraddlingDisc:
      return "straddling-disc-" + std::to_string(k);
  }
  return {};
}

LemmaBound bound_lemma5(const Schedule& s, double r) {
  if (!(r >= 1.0)) throw std::domain_error("bound_lemma5: r must be >= 1");
  const double root = std::sqrt(s.n + 1.0);
  LemmaBound b{root, GrowthCase::BelowFirstDisc, 0};
  if (s.blocks.empty()) return b;
  if (!s.resolved()) throw ScheduleError("bound_lemma5: schedule is not resolved");

  double poles = 0.0;
  for (std::size_t k = 1; k <= s.blocks.size(); ++k) {
    const Block& blk = s.blocks[k - 1];
    const double a = *blk.modulus;
    const double R = blk.cert.R;
    if (r < a - R) {
      if (k == 1) return b;
      // between disc k-1 and disc k
      return LemmaBound{poles * std::log(r) + root, GrowthCase::BetweenDiscs, k - 1};
    }
    poles += static_cast<double>(blk.n_poles);
    if (r <= a + R) return LemmaBound{poles * std::log(a + R) + root, GrowthCase::StraddlingDisc, k};
  }
  return LemmaBound{poles * std::log(r) + root, GrowthCase::BetweenDiscs, s.blocks.size()};
}

double bound_small_r(const Schedule& s, double r) {
  return s.n * s.r0 * s.r0 * (s.r0 + 1.0) * (s.r0 + 1.0) * s.eps0 * s.eps0 * std::log(r);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw std::invalid_argument("log_grid: need 0 < lo <= hi, count >= 1");
  std::vector<double> g(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = count == 1 ? lo : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  g.front() = lo;
  if (count > 1) g.back() = hi;
  return g;
}

GrowthReport growth_report(const UniversalCurve& u, const std::vector<double>& r_grid, const GrowthOptions& opt) {
  const Schedule& s = u.schedule();
  GrowthReport rep;
  rep.m1 = proximity(u, 1.0, opt.quad).value;
  rep.rows.resize(r_grid.size());

  auto compute = [&](std::size_t i) {
    GrowthRow row;
    auto nr = nudge_radius(u, r_grid[i]);
    row.r = nr.r;
    row.nudged = nr.nudged;
    row.m = proximity(u, row.r, opt.quad).value;
    row.N = counting(u, row.r);
    row.T_fmt = row.r == 1.0 ? 0.0 : row.m + row.N - rep.m1;
    if (opt.area) row.T_area = characteristic_area(u, row.r, opt.quad);
    row.phi_log_bound = s.gauge(row.r) * std::log(row.r);
    row.lemma = bound_lemma5(s, row.r);
    row.margin = row.phi_log_bound - row.T_fmt;
    rep.rows[i] = row;
  };

  const unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1 || r_grid.size() < 2) {
    for (std::size_t i = 0; i < r_grid.size(); ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < r_grid.size(); i = next++) compute(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (rep.first_failure.empty()) rep.first_failure = msg;
  };
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    std::ostringstream where;
    where << " at r = " << format_double(row.r) << " (T = " << format_double(row.T_fmt) << ")";
    bool theorem = row.r > 1.0 ? row.T_fmt < row.phi_log_bound : row.T_fmt <= 0.0;
    if (!theorem) fail(rep.theorem_ok, "T >= phi(r) log r" + where.str());
    if (!(row.T_fmt <= row.lemma.value + opt.lemma_slack)) {
      fail(rep.lemma_ok, "T exceeds the " + row.lemma.label() + " bound" + where.str());
    }
    if (row.r <= s.r0 && !s.blocks.empty() && !(row.T_fmt <= bound_small_r(s, row.r) + opt.lemma_slack)) {
      fail(rep.lemma_ok, "T exceeds n r0^2 (r0+1)^2 eps0^2 log r" + where.str());
    }
    if (i > 0 && row.r >= rep.rows[i - 1].r && row.T_fmt < rep.rows[i - 1].T_fmt - opt.monotone_slack) {
      fail(rep.monotone_ok, "T decreases" + where.str());
    }
  }
  return rep;
}

void write_growth_csv(std::ostream& os, const GrowthReport& rep) {
  os << "r,T_fmt,T_area,N,m,phi_log_bound,lemma_bound,case,margin,T_area_err,nudged\n";
  for (const auto& row : rep.rows) {
    os << format_double(row.r) << ',' << format_double(row.T_fmt) << ','
       << (row.T_area ? format_double(row.T_area->value) : std::string()) << ',' << format_double(row.N) << ','
       << format_double(row.m) << ',' << format_double(row.phi_log_bound) << ',' << format_double(row.lemma.value)
       << ',' << row.lemma.label() << ',' << format_double(row.margin) << ','
       << (row.T_area ? format_double(row.T_area->error) : std::string()) << ',' << (row.nudged ? 1 : 0) << '\n';
  }
}

}  // namespace uec
