#pragma once

#include <Eigen/Dense>

namespace uec {

/// A point of CP^n given by a nonzero homogeneous lift.
class ProjPoint {
 public:
  explicit ProjPoint(Eigen::VectorXcd homog);

  const Eigen::VectorXcd& homog() const { return v_; }
  /// n for a point of CP^n.
  Eigen::Index dimension() const { return v_.size() - 1; }

 private:
  Eigen::VectorXcd v_;
};

/// Fubini-Study distance normalized as the angle between the complex lines,
/// in [0, pi/2]. Evaluated as atan2(|a ^ b|, |<a,b>|), which equals
/// arccos(|<a,b>| / (|a||b|)) without its loss of precision near 0.
double fs_distance(const ProjPoint& a, const ProjPoint& b);

bool projectively_equal(const ProjPoint& a, const ProjPoint& b, double tol = 1e-12);

/// Coefficient of (i/2pi) dz^dzbar in h^*omega_FS for the affine chart
/// [1 : h_1 : ... : h_n], with h' the derivative. Computed through the
/// Lagrange identity, so it is a sum of nonnegative terms.
double fs_pullback_density(const Eigen::VectorXcd& h, const Eigen::VectorXcd& hprime);

/// Same density for an arbitrary holomorphic lift F of length n+1:
/// sum_{i<j} |F_i F_j' - F_j F_i'|^2 / |F|^4.
double fs_pullback_density_homog(const Eigen::VectorXcd& F, const Eigen::VectorXcd& Fprime);

}  // namespace uec
