#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "uec/rational_eval.hpp"
#include "uec/rcurve.hpp"

using namespace uec;
using namespace uec::testing;

TEST_CASE("curves outside the admissible set are rejected") {
  CHECK_THROWS_AS(curve({P({"1"}), P({"1"})}), InvalidCurve);
  CHECK_THROWS_AS(curve({P({"0", "1"}), P({"0", "1"})}), InvalidCurve);
  CHECK_THROWS_AS(curve({GPoly(), P({"1"})}), InvalidCurve);
  CHECK_THROWS_AS(curve({P({"0", "1"})}), InvalidCurve);
  CHECK_NOTHROW(curve({P({"0", "1"}), GPoly()}));
}

TEST_CASE("affine components in lowest terms") {
  auto a = affine_components(curve({P({"0", "0", "1"}), P({"0", "1"})}));
  REQUIRE(a.size() == 1);
  CHECK(a[0].num == P({"1"}));
  CHECK(a[0].den == P({"0", "1"}));

  auto b = affine_components(inv_z());
  CHECK(b[0].num == P({"1"}));
  CHECK(b[0].den == P({"0", "1"}));

  auto c = affine_components(z_over_z2p1());
  CHECK(c[0].num == P({"0", "1"}));
  CHECK(c[0].den == P({"1", "0", "1"}));
}

TEST_CASE("pole counts") {
  CHECK(pole_count(inv_z()).total == 1);
  CHECK(pole_count(curve({P({"0", "0", "1"}), P({"0", "1"})})).total == 1);
  // (z/z^3, 1/z^3) reduce to (1/z^2, 1/z^3)
  PoleCount pc = pole_count(curve({P({"0", "0", "0", "1"}), P({"0", "1"}), P({"1"})}));
  CHECK(pc.total == 5);
  CHECK(pc.per_component == std::vector<std::size_t>{2, 3});
}

TEST_CASE("property: pole count survives a common factor") {
  std::vector<RationalCurve> base = {inv_z(), z_over_z2p1(), curve({P({"0", "0", "0", "1"}), P({"0", "1"}), P({"1"})}),
                                     curve({P({"2", "1+i", "0", "3"}), P({"1/2", "0", "-i"}), GPoly()})};
  for (const GPoly& f : {P({"-1", "1"}), P({"1", "0", "1"}), P({"0", "0", "1"}), P({"1/3-i", "2"})}) {
    for (const auto& c : base) {
      std::vector<GPoly> scaled;
      for (const auto& p : c.polys()) scaled.push_back(p * f);
      CHECK(pole_count(RationalCurve(scaled)).total == pole_count(c).total);
    }
  }
}

TEST_CASE("certificate for [z : 1]") {
  DecayCertificate cert = decay_certificate(inv_z(), 1);
  CHECK(cert.delta == 2.0);
  CHECK(cert.C > 1.0);
  CHECK(cert.R == cert.delta + std::ldexp(cert.C, 1));
  CHECK(cert.R == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(validate_certificate(inv_z(), cert) == 0);
  DecayCertificate manual{1.0, 1.0, 3, 1.0 + std::ldexp(1.0, 3)};
  CHECK(manual.R == 9.0);
}

TEST_CASE("property: inequality (1) on sampled points beyond R") {
  std::vector<RationalCurve> dict = {inv_z(), z_over_z2p1(), curve({P({"1", "0", "1"}), P({"0", "1"}), P({"1"})}),
                                     curve({P({"-3+i", "5", "0", "1/7"}), P({"9", "-2*i"}), P({"0", "0", "4"})})};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> logr(0.0, 8.0), theta(0.0, 2.0 * std::numbers::pi);
  for (const auto& c : dict) {
    auto comps = affine_components(c);
    for (int k = 1; k <= 8; ++k) {
      DecayCertificate cert = decay_certificate(c, k);
      CHECK(cert.R == cert.delta + std::ldexp(cert.C, k));
      std::size_t violations = 0;
      for (int i = 0; i < 1000; ++i) {
        cd z = std::polar(cert.R * std::exp(logr(rng)) * (1.0 + 1e-12), theta(rng));
        for (const auto& g : comps) {
          double v = std::abs(eval_rational(to_cpoly(g.num), to_cpoly(g.den), z));
          if (!(v < std::ldexp(1.0, -k) * cert.R / std::abs(z))) ++violations;
        }
      }
      CHECK(violations == 0);
    }
  }
}

TEST_CASE("homogeneous evaluation") {
  CHECK(projectively_equal(eval_homog(inv_z(), 0.0), ProjPoint(Eigen::Vector2cd(0.0, 1.0))));
  CHECK(projectively_equal(eval_homog(inv_z(), 2.0), ProjPoint(Eigen::Vector2cd(1.0, 0.5))));
  // [z^2 : z] loses the common factor z first
  CHECK(projectively_equal(eval_homog(curve({P({"0", "0", "1"}), P({"0", "1"})}), 0.0),
                           ProjPoint(Eigen::Vector2cd(0.0, 1.0))));
}

TEST_CASE("property: homogeneous and affine evaluation agree away from poles") {
  RationalCurve c = curve({P({"2", "1+i", "0", "3"}), P({"1/2", "0", "-i"}), P({"0", "1"})});
  auto comps = affine_components(c);
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    cd z(g(rng), g(rng));
    Eigen::VectorXcd aff(3);
    aff[0] = 1.0;
    for (std::size_t j = 0; j < comps.size(); ++j)
      aff[static_cast<Eigen::Index>(j + 1)] = eval_rational(to_cpoly(comps[j].num), to_cpoly(comps[j].den), z);
    CHECK(fs_distance(eval_homog(c, z), ProjPoint(aff)) <= 1e-9);
  }
}

TEST_CASE("pole locations use the largest order per point") {
  auto p1 = pole_locations(inv_z());
  REQUIRE(p1.size() == 1);
  CHECK(std::abs(p1[0].value) < 1e-12);
  CHECK(p1[0].multiplicity == 1);

  auto p2 = pole_locations(curve({P({"0", "0", "1"}), P({"0", "1"}), P({"1"})}));
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].multiplicity == 2);

  // coprime cubic p_0: three simple poles at its roots
  RationalCurve c = curve({P({"-6", "11", "-6", "1"}), P({"1", "1"})});
  auto p3 = pole_locations(c);
  REQUIRE(p3.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(p3[i].value - cd(i + 1.0)) < 1e-10);
    CHECK(p3[i].multiplicity == 1);
  }
}

TEST_CASE("property: max-count never exceeds the pole count") {
  std::vector<RationalCurve> dict = {inv_z(), z_over_z2p1(), curve({P({"0", "0", "0", "1"}), P({"0", "1"}), P({"1"})}),
                                     curve({P({"1", "0", "1"}), P({"0", "1"}), P({"1"})}),
                                     curve({P({"0", "0", "1", "1"}), P({"1"}), P({"0", "1"})})};
  for (const auto& c : dict) {
    std::size_t max_count = 0;
    for (const auto& r : pole_locations(c)) max_count += static_cast<std::size_t>(r.multiplicity);
    CHECK(max_count <= pole_count(c).total);
    CHECK(max_count == common_denominator(c).degree().value());
  }
}
