#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uec/rcurve.hpp"

namespace uec {

/// One entire function given by its Taylor data at 0.
struct EntireComponent {
  std::string label;
  /// d-th Taylor coefficient.
  std::function<std::complex<double>(int)> coefficient;
  /// M(d) >= |coefficient(d)|.
  std::function<double(int)> majorant;
  /// Upper bound for sum_{k>d} M(k) N^k.
  std::function<double(int, double)> tail_bound;
  /// Closed-form value, used for verification only.
  std::function<std::complex<double>(std::complex<double>)> value;
};

/// Built-in components: b, polynomial, b*exp(a z), b*sin(a z), b*cos(a z).
EntireComponent constant_component(std::complex<double> b);
EntireComponent polynomial_component(std::vector<std::complex<double>> coeffs);
EntireComponent exp_component(std::complex<double> a, std::complex<double> b);
EntireComponent sin_component(std::complex<double> a, std::complex<double> b);
EntireComponent cos_component(std::complex<double> a, std::complex<double> b);

/// A target entire curve [f_0 : ... : f_n]. The provider certifies that
/// sum |f_j|^2 >= sigma^2 on the target disc.
struct EntireCurveSpec {
  std::vector<EntireComponent> components;
  double sigma = 1.0;

  int dimension() const { return static_cast<int>(components.size()) - 1; }
  Eigen::VectorXcd value(std::complex<double> z) const;
};

class RungeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mu = sin(eps)/2: for |a| >= 1 and |b - a| <= mu the FS angle is < eps.
double mu_for_epsilon(double eps);

struct DegreeBump {
  GPoly poly;
  long M = 0;
  std::size_t Q = 0;
};

/// p0 (z+M)^Q / M^Q with Q minimal so the degree exceeds others_maxdeg and
/// M doubled from 2 until |p0|_inf ((1+N/M)^Q - 1) < budget.
DegreeBump degree_bump(const GPoly& p0, Degree others_maxdeg, double N, double budget);

struct RungeResult {
  RationalCurve curve;
  std::vector<std::size_t> taylor_degrees;
  std::vector<std::string> denominators;  // rounding denominator per component
  DegreeBump bump;
  double mu = 0.0;
  double max_grid_distance = 0.0;
  std::complex<double> worst_point{};
  std::size_t grid_points = 0;
};

/// Points of the (2 ceil(8N) + 1)^2 grid on [-N, N]^2 lying in the closed disc.
std::vector<std::complex<double>> disc_grid(double N);

/// Sup-norm safe approximation of an entire curve on the closed disc of
/// radius N by a member of the admissible rational set, checked on disc_grid(N).
RungeResult rationalize(const EntireCurveSpec& f, double N, double eps);

}  // namespace uec
