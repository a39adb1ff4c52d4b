#include "uec/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace uec {

namespace {

// sum_{i<j} |a_i b_j - a_j b_i|^2
double wedge_norm2(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = i + 1; j < a.size(); ++j) s += std::norm(a[i] * b[j] - a[j] * b[i]);
  }
  return s;
}

}  // namespace

ProjPoint::ProjPoint(Eigen::VectorXcd homog) : v_(std::move(homog)) {
  if (v_.size() < 1) throw std::invalid_argument("projective point needs at least one coordinate");
  if (v_.squaredNorm() == 0.0) throw std::invalid_argument("projective point with zero homogeneous vector");
  if (!v_.allFinite()) throw std::invalid_argument("projective point with non-finite coordinates");
}

double fs_distance(const ProjPoint& a, const ProjPoint& b) {
  if (a.homog().size() != b.homog().size()) throw std::invalid_argument("fs_distance: dimension mismatch");
  // Normalize first so neither term under- or overflows.
  Eigen::VectorXcd u = a.homog() / a.homog().norm();
  Eigen::VectorXcd v = b.homog() / b.homog().norm();
  double inner = std::abs(u.dot(v));
  double cross = std::sqrt(wedge_norm2(u, v));
  return std::atan2(cross, inner);
}

bool projectively_equal(const ProjPoint& a, const ProjPoint& b, double tol) { return fs_distance(a, b) <= tol; }

double fs_pullback_density(const Eigen::VectorXcd& h, const Eigen::VectorXcd& hprime) {
  if (h.size() != hprime.size()) throw std::invalid_argument("fs_pullback_density: size mismatch");
  double denom = 1.0 + h.squaredNorm();
  double num = hprime.squaredNorm() + wedge_norm2(h, hprime);
  return num / (denom * denom);
}

double fs_pullback_density_homog(const Eigen::VectorXcd& F, const Eigen::VectorXcd& Fprime) {
  if (F.size() != Fprime.size()) throw std::invalid_argument("fs_pullback_density_homog: size mismatch");
  double scale = F.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw std::invalid_argument("fs_pullback_density_homog: zero lift");
  // The density is invariant under F -> cF, so rescale for range safety.
  Eigen::VectorXcd f = F / scale;
  Eigen::VectorXcd fp = Fprime / scale;
  double n2 = f.squaredNorm();
  return wedge_norm2(f, fp) / (n2 * n2);
}

}  // namespace uec
