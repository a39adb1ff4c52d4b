#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uec/poly.hpp"

namespace uec {

/// Monic greatest common divisor. Throws if both inputs are zero.
GPoly gcd(const GPoly& a, const GPoly& b);

/// Scales p so its leading coefficient is 1 (zero stays zero).
GPoly monic(const GPoly& p);

/// Exact quotient a / b; throws if the division leaves a remainder.
GPoly exact_div(const GPoly& a, const GPoly& b);

/// Least common multiple, monic.
GPoly lcm(const GPoly& a, const GPoly& b);

/// num/den reduced to a coprime pair with monic denominator; the unit
/// taken out of the denominator is absorbed into the numerator.
std::pair<GPoly, GPoly> lowest_terms(const GPoly& num, const GPoly& den);

/// Cauchy bound 1 + max_{j<d} |c_j| / |c_d| (rounded up). Every root of p
/// has modulus at most this value. Requires deg p >= 1.
double cauchy_root_bound(const GPoly& p);

/// Coefficients converted to double precision.
CPoly to_cpoly(const GPoly& p);

/// Sum of coefficient moduli, rounded up. Bounds sup_{|z|<=1} |p|.
double coeff_abs_sum(const GPoly& p);

/// sup_{|z|<=radius} |p(z)| <= sum |c_k| radius^k (rounded up).
double sup_bound_on_disc(const GPoly& p, double radius);

/// Square-free decomposition p = lc * prod_i q_i^i (Yun). Entry i-1 holds
/// the monic q_i; factors equal to 1 are kept so multiplicity = index + 1.
std::vector<GPoly> square_free_decomposition(const GPoly& p);

/// Parses an ascending coefficient list in the Gaussian-rational text format.
GPoly parse_gpoly(const std::vector<std::string>& coeffs);
std::vector<std::string> format_gpoly(const GPoly& p);

/// Human-readable form such as "z^2 + (1/2)*z - i".
std::string pretty(const GPoly& p);

}  // namespace uec
