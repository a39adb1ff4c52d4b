#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "uec/projective.hpp"
#include "uec/rcurve.hpp"
#include "uec/scheduler.hpp"

namespace uec {

/// Holomorphic lift F = (F_0, ..., F_n) near a point together with F'.
/// In the affine chart F = (1, h), F' = (0, h').
struct Frame {
  Eigen::VectorXcd F;
  Eigen::VectorXcd dF;
};

struct Pole {
  std::complex<double> z;
  int multiplicity = 1;
};

class PoleProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A meromorphic curve [1 : h_1 : ... : h_n] with finitely many poles.
class MeromorphicCurve {
 public:
  virtual ~MeromorphicCurve() = default;
  virtual int dimension() const = 0;
  /// (h_1(z), ..., h_n(z)); throws PoleProximityError near a pole.
  virtual Eigen::VectorXcd affine(std::complex<double> z) const = 0;
  /// A lift that is holomorphic and nonvanishing near z, with F_0 equal to
  /// prod (z - z_p)^{m_p} over the poles it absorbs (1 when it absorbs none).
  virtual Frame frame(std::complex<double> z) const = 0;
  /// Poles of the map with the max-over-components multiplicity.
  virtual const std::vector<Pole>& poles() const = 0;
};

/// A single rational curve [p_0 : ... : p_n] evaluated in place (no translation).
/// Unlike RationalCurve it accepts any degrees, so constants such as [1 : c] fit.
class RationalMap final : public MeromorphicCurve {
 public:
  explicit RationalMap(const std::vector<GPoly>& polys);

  int dimension() const override { return static_cast<int>(lift_.size()) - 1; }
  Eigen::VectorXcd affine(std::complex<double> z) const override;
  Frame frame(std::complex<double> z) const override;
  const std::vector<Pole>& poles() const override { return poles_; }

 private:
  std::vector<CPoly> num_, den_, dnum_, dden_;
  std::vector<CPoly> lift_, dlift_;
  std::vector<Pole> poles_;
};

/// Per-block data cached in double precision. Local coordinate w = z - a_k.
struct BlockData {
  std::size_t k = 0;
  std::complex<double> center;
  double R = 0.0;
  std::vector<CPoly> num, den;      // g_j = num/den, lowest terms
  std::vector<CPoly> dnum, dden;    // g_j' = (num' den - num den') / den^2
  CPoly lcd, dlcd;                  // least common denominator d and d'
  std::vector<CPoly> lifted, dlifted;  // d * g_j and its derivative
  std::vector<Pole> local_poles;    // roots of d
};

/// h(z) = [1 : h_1 : ... : h_n] with h_j(z) = sum_k g_j^[k](z - a_k) over a
/// resolved finite schedule.
class UniversalCurve final : public MeromorphicCurve {
 public:
  static constexpr double kPoleTolerance = 1e-9;

  explicit UniversalCurve(Schedule s);

  const Schedule& schedule() const { return s_; }
  const std::vector<BlockData>& blocks() const { return blocks_; }

  int dimension() const override { return s_.n; }
  Eigen::VectorXcd affine(std::complex<double> z) const override { return eval_affine(z); }
  Frame frame(std::complex<double> z) const override;
  const std::vector<Pole>& poles() const override { return poles_; }

  Eigen::VectorXcd eval_affine(std::complex<double> z) const;
  Eigen::VectorXcd eval_derivative(std::complex<double> z) const;
  /// Block k alone, g^[k](z - a_k) (1-based k).
  Eigen::VectorXcd block_value(std::size_t k, std::complex<double> z) const;
  Eigen::VectorXcd block_derivative(std::size_t k, std::complex<double> z) const;
  /// sum over l != k of g^[l](z - a_l).
  Eigen::VectorXcd error_term(std::size_t k, std::complex<double> z) const;
  Eigen::VectorXcd error_term_derivative(std::size_t k, std::complex<double> z) const;
  /// Projective value; inside a disc holding poles it uses the lift
  /// (d(w) : d(w) g_j(w) + d(w) eps_j(z)), w = z - a_k.
  ProjPoint eval_proj(std::complex<double> z) const;

  /// 1-based index of a closed disc containing z, if any.
  std::optional<std::size_t> in_disc(std::complex<double> z) const;
  /// 1-based index minimizing |z - a_k| - R_k (0 for an empty schedule).
  std::size_t nearest_block(std::complex<double> z) const;
  /// Distance from z to the nearest pole (infinity if there are none).
  double pole_distance(std::complex<double> z) const;

  /// Sum over dropped blocks k > K of 2^{-k}: what an infinite schedule
  /// would add outside the dropped discs.
  double tail_bound() const;

 private:
  void check_pole_distance(std::complex<double> z) const;

  Schedule s_;
  std::vector<BlockData> blocks_;
  std::vector<Pole> poles_;
};

struct OutsideDiscReport {
  std::size_t evaluated = 0;
  std::size_t rejected = 0;
  std::size_t violations = 0;
  double max_abs = 0.0;
  std::complex<double> worst_point{};
  bool pass() const { return violations == 0; }
};

/// Asserts max_j |h_j(z)| < 1 for every sample outside all closed discs;
/// samples inside a disc are counted as rejected and skipped.
OutsideDiscReport outside_disc_bound_check(const UniversalCurve& u, const std::vector<std::complex<double>>& samples);

/// `count` points outside all discs: log-spaced radii in [1/2, 4 max(|a_k|+R_k)]
/// with seeded random angles, plus rings hugging each disc.
std::vector<std::complex<double>> outside_disc_samples(const UniversalCurve& u, std::size_t count, std::uint64_t seed);

/// Points of a side x side square grid that fall in the closed disc.
std::vector<std::complex<double>> disc_grid_points(std::complex<double> center, double radius, int side);

struct ErrorTermReport {
  std::size_t k = 0;
  double max_abs = 0.0;
  double bound = 0.0;  // 2^{-k+1}
  std::size_t points = 0;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

/// max_j |eps_j^[k]| over a side x side grid of the closed disc D(a_k, R_k).
ErrorTermReport error_term_check(const UniversalCurve& u, std::size_t k, int side = 17);

struct UniversalityReport {
  std::size_t k = 0;
  double N = 0.0;
  double eps = 0.0;
  double sigma = 0.0;         // min ||gamma|| on the grid of D_N
  double M = 0.0;             // sup |p_0| / sigma on D_N
  double delta = 0.0;         // mu_for_epsilon(eps/2)
  double max_error_term = 0.0;  // on the grid of D(a_k, R_k)
  bool precondition = false;  // R_k > N and max_error_term <= delta/M
  double sup_distance = 0.0;
  std::complex<double> worst_point{};
  bool pass() const { return precondition && sup_distance < eps / 2.0; }
};

/// Universality event for block k: checks the error-term precondition, then
/// sup over a side x side grid of D_N of d_FS(h(z + a_k), gamma(z)).
UniversalityReport universality_check(const UniversalCurve& u, std::size_t k, double N, double eps, int side = 41);

/// CSV rows: z_re, z_im, |h_1|, ..., |h_n|, in_disc_flag, nearest_block.
void write_point_csv(std::ostream& os, const UniversalCurve& u, const std::vector<std::complex<double>>& points);

}  // namespace uec
