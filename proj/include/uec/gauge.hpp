#pragma once

#include <string>
#include <utility>
#include <vector>

namespace uec {

/// A positive nondecreasing function phi with phi(r) -> infinity; the
/// target growth is phi(r) log r.
class GrowthGauge {
 public:
  enum class Kind { ScaledLog, Power, IteratedLog, Samples };

  /// phi(r) = c log(1+r) + b
  static GrowthGauge scaled_log(double c, double b);
  /// phi(r) = c r^alpha + b, 0 < alpha <= 1
  static GrowthGauge power(double c, double alpha, double b = 0.0);
  /// phi(r) = c log(1 + log(1+r)) + b
  static GrowthGauge iterated_log(double c, double b);
  /// Piecewise-linear through (r_i, phi_i), made nondecreasing by a running
  /// max, constant before the first sample, extended past the last one with
  /// the slope of the final segment.
  static GrowthGauge samples(std::vector<std::pair<double, double>> pts);

  double operator()(double r) const;

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  double b() const { return b_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<double, double>>& points() const { return pts_; }

  static std::string kind_name(Kind k);
  static Kind kind_from_name(const std::string& s);

 private:
  Kind kind_ = Kind::ScaledLog;
  double c_ = 1.0, b_ = 1.0, alpha_ = 1.0;
  std::vector<std::pair<double, double>> pts_;
};

}  // namespace uec
