#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uec/curve.hpp"
#include "uec/scheduler.hpp"

namespace uec {

struct QuadOptions {
  /// Relative tolerance on the whole integral (globally adaptive Gauss-Kronrod).
  double tol = 1e-11;
  int max_depth = 14;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// m(r) = (1/2pi) int log sqrt(1 + sum |h_j(re^{it})|^2) dt.
/// The integrand is integrated with sum_p m_p log|z - z_p| added (which makes
/// it smooth through poles) and the Jensen value sum_p m_p log max(r, |z_p|)
/// subtracted afterwards.
Estimate proximity(const MeromorphicCurve& c, double r, const QuadOptions& q = {});

/// N(r) = sum over poles with |z_p| <= r of m_p log(r / max(|z_p|, 1)).
double counting(const MeromorphicCurve& c, double r);

/// T(r) = m(r) + N(r) - m(1).
double characteristic_fmt(const MeromorphicCurve& c, double r, const QuadOptions& q = {});

/// T(r) = (1/pi) int_{|z|<r} density(z) log(r / max(|z|, 1)) dx dy, the
/// pullback density taken from a holomorphic lift so poles need no excision.
Estimate characteristic_area(const MeromorphicCurve& c, double r, const QuadOptions& q = {});

/// r moved by +1e-6 r while some pole sits within 1e-9 max(1, r) of |z| = r.
struct NudgedRadius {
  double r = 0.0;
  bool nudged = false;
};
NudgedRadius nudge_radius(const MeromorphicCurve& c, double r);

enum class GrowthCase { BelowFirstDisc, BetweenDiscs, StraddlingDisc };

struct LemmaBound {
  double value = 0.0;
  GrowthCase tag = GrowthCase::BelowFirstDisc;
  std::size_t k = 0;  // disc index for the two disc cases
  std::string label() const;
};

/// Analytic upper bound on T(r):
///  below the first disc            sqrt(n+1)
///  between disc k and k+1 (or past the last one)
///                                  (n_1 + ... + n_k) log r + sqrt(n+1)
///  |r - |a_k|| <= R_k              (n_1 + ... + n_k) log(|a_k| + R_k) + sqrt(n+1)
LemmaBound bound_lemma5(const Schedule& s, double r);

/// n r0^2 (r0+1)^2 eps0^2 log r, valid for 1 <= r <= r0.
double bound_small_r(const Schedule& s, double r);

struct GrowthRow {
  double r = 0.0;
  bool nudged = false;
  double T_fmt = 0.0;
  std::optional<Estimate> T_area;
  double N = 0.0;
  double m = 0.0;
  double phi_log_bound = 0.0;
  LemmaBound lemma;
  double margin = 0.0;  // phi_log_bound - T_fmt
};

struct GrowthOptions {
  bool area = false;
  QuadOptions quad;
  double monotone_slack = 1e-6;
  double lemma_slack = 1e-6;
  unsigned jobs = 1;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  double m1 = 0.0;
  bool theorem_ok = true;
  bool lemma_ok = true;
  bool monotone_ok = true;
  std::string first_failure;
  bool pass() const { return theorem_ok && lemma_ok && monotone_ok; }
};

/// T_fmt against phi(r) log r (strict for r > 1; T(1) = 0 = bound), against
/// the piecewise case bound (plus the small-r bound for r <= r0), and monotonicity.
GrowthReport growth_report(const UniversalCurve& u, const std::vector<double>& r_grid, const GrowthOptions& opt = {});

/// count points log-spaced in [lo, hi] (count == 1 gives lo).
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// r, T_fmt, T_area, N, m, phi_log_bound, lemma_bound, case, margin.
void write_growth_csv(std::ostream& os, const GrowthReport& rep);

}  // namespace uec
