#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uec/gauge.hpp"
#include "uec/rcurve.hpp"

namespace uec {

/// One summand of the construction: curve g^[k], repetition index w_k,
/// angle rho_k, its certificate and pole count, and the resolved center.
struct Block {
  RationalCurve curve;
  std::size_t rep = 1;
  double angle = 0.0;
  DecayCertificate cert;
  std::size_t n_poles = 0;
  /// Positive integer |a_k|, empty until resolved.
  std::optional<double> modulus;

  bool resolved() const { return modulus.has_value(); }
  std::complex<double> center() const;
};

struct Schedule {
  int n = 1;
  GrowthGauge gauge;
  std::vector<Block> blocks;
  double r0 = 0.0;
  double eps0 = 0.0;
  double magnitude_cap = 9007199254740992.0;  // 2^53

  bool resolved() const;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BaseConstants {
  double r0 = 0.0;
  double eps0 = 0.0;
};

/// r0: smallest e + 0.01 j (j >= 1) with phi(r0) log r0 > sqrt(n+1);
/// eps0 = min{1, sqrt(phi(1) / (n r0^2 (r0+1)^2))}.
BaseConstants base_constants(const GrowthGauge& gauge, int n);

/// Blocks in lexicographic order of (repetition, curve index, angle index),
/// truncated to K entries; centers unresolved.
Schedule build_schedule(const std::vector<RationalCurve>& dict, const std::vector<double>& angles, std::size_t K,
                        const GrowthGauge& gauge, int n);

struct EnumerateOptions {
  std::size_t count_cap = 100000;
};

/// Finite slice of the admissible set: deg p_0 <= max_deg, deg p_j < deg p_0,
/// coefficients x + iy with x, y of height <= max_height; one representative
/// per projective class, kept at the position where the class first shows up
/// and replaced by a member with monic p_0 if the class has one.
std::vector<RationalCurve> enumerate_R(int max_deg, int max_height, int n, const EnumerateOptions& opt = {});

/// Margins of the four center constraints for block k (1-based) at modulus
/// m; a constraint holds iff its margin is > 0.
///  (i)   m > R_k/eps0 + r0 + 1
///  (ii)  m - |a_{k-1}| - R_k - R_{k-1} > (R_1 + ... + R_{k-1})(k-1)2^k   (k >= 2)
///  (iii) phi(m - R_k) > (n_1 + ... + n_k + sqrt(n+1)) log(m+R_k)/log(m-R_k), m - R_k > 1
///  (iv)  m > R_k + 1
struct ConstraintMargins {
  double base = 0.0;
  double separation = 0.0;
  double growth = 0.0;
  double clearance = 0.0;

  bool ok() const { return base > 0.0 && separation > 0.0 && growth > 0.0 && clearance > 0.0; }
  /// Name of the first violated constraint, or empty.
  std::string first_violation() const;
};

ConstraintMargins center_margins(const Schedule& s, std::size_t k, double m);

/// Smallest admissible integer modulus for block k (blocks before k resolved).
double resolve_center(const Schedule& s, std::size_t k);

/// Resolves blocks 1..K in order.
void resolve_all(Schedule& s);

struct BlockAudit {
  std::size_t k = 0;
  ConstraintMargins margins;
  bool minimal = false;  // m-1 violates at least one constraint
  bool on_ray = false;   // modulus is a positive integer
  double min_disc_gap_ratio = 0.0;  // min over l<k of dist / (R_l (k-1) 2^k)
};

struct ScheduleAudit {
  std::vector<BlockAudit> blocks;
  bool constants_ok = false;
  bool pass = false;
};

/// Re-evaluates every constraint, minimality, and the disc separation.
ScheduleAudit audit_schedule(const Schedule& s);

}  // namespace uec
