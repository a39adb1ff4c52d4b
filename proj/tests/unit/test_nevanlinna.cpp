#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "uec/nevanlinna.hpp"

using namespace uec;
using namespace uec::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double inv_z_closed_form(double r) { return 0.5 * std::log(r * r + 1.0) - 0.5 * std::log(2.0); }

// Shimizu-Ahlfors characteristic by a plain midpoint rule in polar
// coordinates: T(r) = (1/pi) int_{|z|<r} density log(r / max(|z|, 1)) dA.
template <class Density>
double midpoint_area(Density density, double r, int radial, int angular) {
  double total = 0.0;
  auto piece = [&](double lo, double hi, int steps) {
    double h = (hi - lo) / steps;
    for (int i = 0; i < steps; ++i) {
      double rho = lo + (i + 0.5) * h;
      double avg = 0.0;
      for (int j = 0; j < angular; ++j) avg += density(std::polar(rho, 2.0 * kPi * (j + 0.5) / angular));
      avg /= angular;
      total += 2.0 * rho * std::log(r / std::max(rho, 1.0)) * avg * h;
    }
  };
  piece(0.0, 1.0, radial);
  piece(1.0, r, radial);
  return total;
}

}  // namespace

TEST_CASE("proximity and characteristic of constant curves") {
  for (cd c : {cd(0.0), cd(3.0, -1.0), cd(1e-3, 5.0)}) {
    RationalMap m({P({"1"}), parse_gpoly({GaussianRational::from_double(c).str()})});
    for (double r : {1.0, 2.0, 37.0, 1e4}) {
      CHECK(proximity(m, r).value == doctest::Approx(0.5 * std::log1p(std::norm(c))).epsilon(1e-12));
      CHECK(std::abs(characteristic_fmt(m, r)) <= 1e-10);
      CHECK(std::abs(characteristic_area(m, r).value) <= 1e-10);
    }
  }
}

TEST_CASE("[1 : 1/z] closed forms") {
  RationalMap m({P({"0", "1"}), P({"1"})});
  REQUIRE(m.poles().size() == 1);
  for (int i = 0; i < 50; ++i) {
    double r = std::pow(1000.0, i / 49.0);
    if (r != 1.0) CHECK(proximity(m, r).value == doctest::Approx(0.5 * std::log1p(1.0 / (r * r))).epsilon(1e-10));
    CHECK(std::abs(characteristic_fmt(m, r) - inv_z_closed_form(r)) <= 1e-6);
  }
  for (double r : {1.0, 1.5, 10.0, 300.0}) {
    Estimate a = characteristic_area(m, r);
    CHECK(std::abs(a.value - inv_z_closed_form(r)) <= 1e-8);
  }
}

TEST_CASE("counting function examples") {
  RationalMap none({P({"1"}), P({"0", "1"})});
  CHECK(counting(none, 100.0) == 0.0);
  RationalMap at2({P({"-2", "1"}), P({"1"})});
  CHECK(counting(at2, 1.9) == 0.0);
  CHECK(counting(at2, 2.0 * std::numbers::e) == doctest::Approx(1.0));
  RationalMap inner({P({"-1/2", "1"}), P({"1"})});
  CHECK(counting(inner, std::numbers::e) == doctest::Approx(1.0));
  // double pole from the larger order of (1/z, 1/z^2)
  RationalMap dbl({P({"0", "0", "1"}), P({"0", "1"}), P({"1"})});
  CHECK(counting(dbl, std::numbers::e) == doctest::Approx(2.0));
}

TEST_CASE("characteristic vanishes at r = 1") {
  RationalMap m({P({"1", "0", "1"}), P({"0", "1"})});
  CHECK(characteristic_fmt(m, 1.0) == 0.0);
  CHECK(characteristic_area(m, 1.0).value == 0.0);
  CHECK_THROWS(characteristic_fmt(m, 0.5));
}

TEST_CASE("area route matches an independent midpoint rule on pole-free maps") {
  // [1 : z]: radial density 1/(1+|z|^2)^2
  RationalMap lin({P({"1"}), P({"0", "1"})});
  auto d_lin = [](cd z) { return 1.0 / std::pow(1.0 + std::norm(z), 2); };
  // [1 : (z-1)^2]: not radial
  RationalMap sq({P({"1"}), P({"1", "-2", "1"})});
  auto d_sq = [](cd z) {
    cd w = z - 1.0;
    return 4.0 * std::norm(w) / std::pow(1.0 + std::norm(w * w), 2);
  };
  for (double r : {1.5, 3.0}) {
    CHECK(std::abs(characteristic_area(lin, r).value - midpoint_area(d_lin, r, 4000, 64)) <= 1e-6);
    CHECK(std::abs(characteristic_area(sq, r).value - midpoint_area(d_sq, r, 4000, 256)) <= 1e-6);
    CHECK(std::abs(characteristic_fmt(lin, r) - inv_z_closed_form(r)) <= 1e-10);
  }
}

TEST_CASE("first main theorem consistency for a small schedule") {
  UniversalCurve u(resolved({inv_z(), z_over_z2p1()}, {0.0, kPi / 2}, 2));
  for (double r : {2.0, 20.0, 60.0, 130.0, 400.0}) {
    double f = characteristic_fmt(u, nudge_radius(u, r).r);
    Estimate a = characteristic_area(u, nudge_radius(u, r).r);
    CHECK(std::abs(a.value - f) <= std::max(1e-8, 1e-8 * f));
  }
}

TEST_CASE("radius nudge") {
  RationalMap m({P({"-2", "1"}), P({"1"})});
  NudgedRadius nr = nudge_radius(m, 2.0);
  CHECK(nr.nudged);
  CHECK(nr.r == doctest::Approx(2.0 * (1.0 + 1e-6)));
  CHECK_FALSE(nudge_radius(m, 2.1).nudged);
}

TEST_CASE("lemma bounds by case") {
  Schedule s = resolved({inv_z(), z_over_z2p1()}, {0.0, kPi / 2}, 3);
  const double root = std::sqrt(2.0);
  const Block& b1 = s.blocks[0];
  const Block& b2 = s.blocks[1];
  double a1 = *b1.modulus, R1 = b1.cert.R, a2 = *b2.modulus, R2 = b2.cert.R;

  LemmaBound below = bound_lemma5(s, a1 - R1 - 1.0);
  CHECK(below.tag == GrowthCase::BelowFirstDisc);
  CHECK(below.value == root);

  LemmaBound on1 = bound_lemma5(s, a1);
  CHECK(on1.tag == GrowthCase::StraddlingDisc);
  CHECK(on1.k == 1);
  CHECK(on1.value == doctest::Approx(b1.n_poles * std::log(a1 + R1) + root));

  double r = 0.5 * (a1 + R1 + a2 - R2);
  LemmaBound mid = bound_lemma5(s, r);
  CHECK(mid.tag == GrowthCase::BetweenDiscs);
  CHECK(mid.k == 1);
  CHECK(mid.label() == "between-discs-1");
  CHECK(mid.value == doctest::Approx(b1.n_poles * std::log(r) + root));

  LemmaBound on2 = bound_lemma5(s, a2 + R2);
  CHECK(on2.label() == "straddling-disc-2");
  CHECK(on2.value == doctest::Approx((b1.n_poles + b2.n_poles) * std::log(a2 + R2) + root));

  double r0 = s.r0;
  CHECK(bound_small_r(s, 2.0) ==
        doctest::Approx(r0 * r0 * (r0 + 1) * (r0 + 1) * s.eps0 * s.eps0 * std::log(2.0)));
  CHECK(bound_small_r(s, 2.0) <= s.gauge(1.0) * std::log(2.0) * (1.0 + 1e-12));
}

TEST_CASE("growth report on the empty schedule and on a real one") {
  Schedule empty = build_schedule({inv_z()}, {0.0}, 1, log_gauge(), 1);
  empty.blocks.clear();
  GrowthReport e = growth_report(UniversalCurve(empty), log_grid(1.0, 1e4, 20));
  CHECK(e.pass());
  for (const auto& row : e.rows) CHECK(std::abs(row.T_fmt) <= 1e-12);

  UniversalCurve u(resolved({inv_z(), z_over_z2p1()}, {0.0, kPi / 2}, 3));
  GrowthOptions opt;
  opt.jobs = 3;
  auto grid = log_grid(1.0, 2.0 * *u.schedule().blocks.back().modulus, 60);
  GrowthReport rep = growth_report(u, grid, opt);
  CHECK(rep.pass());
  CHECK(rep.rows.size() == 60);
  CHECK(rep.rows.front().T_fmt == 0.0);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].margin > 0.0);
    CHECK(rep.rows[i].T_fmt >= rep.rows[i - 1].T_fmt - 1e-6);
  }
  opt.jobs = 1;
  GrowthReport serial = growth_report(u, grid, opt);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(serial.rows[i].T_fmt == rep.rows[i].T_fmt);

  std::ostringstream os;
  write_growth_csv(os, rep);
  CHECK(os.str().rfind("r,T_fmt,T_area,N,m,phi_log_bound,lemma_bound,case,margin", 0) == 0);
}

TEST_CASE("log grid") {
  auto g = log_grid(1.0, 1000.0, 4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == doctest::Approx(10.0));
  CHECK(g[3] == 1000.0);
  CHECK(log_grid(5.0, 9.0, 1) == std::vector<double>{5.0});
}
