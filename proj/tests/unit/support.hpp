#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "uec/gpoly.hpp"
#include "uec/rcurve.hpp"
#include "uec/scheduler.hpp"

namespace uec::testing {

using cd = std::complex<double>;

inline GPoly P(std::initializer_list<const char*> coeffs) {
  std::vector<std::string> v(coeffs.begin(), coeffs.end());
  return parse_gpoly(v);
}

inline RationalCurve curve(std::initializer_list<GPoly> polys) { return RationalCurve(std::vector<GPoly>(polys)); }

// [z : 1], the curve whose single component is 1/z.
inline RationalCurve inv_z() { return curve({P({"0", "1"}), P({"1"})}); }

// [z^2 + 1 : z]
inline RationalCurve z_over_z2p1() { return curve({P({"1", "0", "1"}), P({"0", "1"})}); }

inline GrowthGauge log_gauge() { return GrowthGauge::scaled_log(1.0, 1.0); }

inline Schedule resolved(const std::vector<RationalCurve>& dict, const std::vector<double>& angles, std::size_t K,
                         int n = 1, GrowthGauge g = log_gauge()) {
  Schedule s = build_schedule(dict, angles, K, g, n);
  resolve_all(s);
  return s;
}

// A single block placed at an explicit positive real modulus.
inline Schedule placed(const RationalCurve& c, double modulus) {
  Schedule s = build_schedule({c}, {0.0}, 1, log_gauge(), c.dimension());
  s.blocks[0].modulus = modulus;
  return s;
}

}  // namespace uec::testing
