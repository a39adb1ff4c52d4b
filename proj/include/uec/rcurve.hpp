#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "uec/gpoly.hpp"
#include "uec/projective.hpp"
#include "uec/roots.hpp"

namespace uec {

/// num/den in lowest terms with monic denominator.
struct RationalFunction {
  GPoly num;
  GPoly den;
};

class InvalidCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rational curve [p_0 : ... : p_n] with Gaussian-rational coefficients
/// and deg p_0 > deg p_j for every j >= 1. Anything else is rejected.
class RationalCurve {
 public:
  explicit RationalCurve(std::vector<GPoly> polys);

  int dimension() const { return static_cast<int>(polys_.size()) - 1; }
  const std::vector<GPoly>& polys() const { return polys_; }
  /// polys() with their common factor divided out.
  const std::vector<GPoly>& reduced() const { return reduced_; }

  friend bool operator==(const RationalCurve& a, const RationalCurve& b) { return a.polys_ == b.polys_; }

 private:
  std::vector<GPoly> polys_;
  std::vector<GPoly> reduced_;
};

/// g_j = p_j / p_0 for j = 1..n, each in lowest terms.
std::vector<RationalFunction> affine_components(const RationalCurve& c);

struct PoleCount {
  std::size_t total = 0;
  std::vector<std::size_t> per_component;
};

/// n_j = deg of the lowest-terms denominator of g_j, total = sum_j n_j.
PoleCount pole_count(const RationalCurve& c);

/// Least common denominator of the affine components (monic). Its root
/// multiplicity at a pole is the largest pole order among the components.
GPoly common_denominator(const RationalCurve& c);

/// Constants with |g_j(z)| < C/|z| for |z| > delta and R = delta + 2^k C.
struct DecayCertificate {
  double delta = 0.0;
  double C = 0.0;
  int k = 1;
  double R = 0.0;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DecayCertificate decay_certificate(const RationalCurve& c, int k);

/// Samples |g_j(z)| < C/|z| on 256 log-spaced radii in (delta, 100 delta]
/// times 16 angles. Returns the number of violations.
std::size_t validate_certificate(const RationalCurve& c, const DecayCertificate& cert);

/// [p_0(z) : ... : p_n(z)] evaluated on the reduced representation.
ProjPoint eval_homog(const RationalCurve& c, std::complex<double> z);

/// Roots of the common denominator; multiplicity = max pole order over components.
std::vector<Root> pole_locations(const RationalCurve& c, const RootOptions& opt = {});

}  // namespace uec
