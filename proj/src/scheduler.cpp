#include "uec/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace uec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t poles_through(const Schedule& s, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t l = 0; l < k; ++l) total += s.blocks[l].n_poles;
  return total;
}

double radii_before(const Schedule& s, std::size_t k) {
  double total = 0.0;
  for (std::size_t l = 0; l + 1 < k; ++l) total += s.blocks[l].cert.R;
  return total;
}

}  // namespace

std::complex<double> Block::center() const {
  if (!modulus) throw ScheduleError("block center requested before resolution");
  return std::polar(*modulus, angle);
}

bool Schedule::resolved() const {
  for (const auto& b : blocks) {
    if (!b.resolved()) return false;
  }
  return true;
}

BaseConstants base_constants(const GrowthGauge& gauge, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  const double target = std::sqrt(n + 1.0);
  auto grid = [](double j) { return std::numbers::e + 0.01 * j; };
  auto holds = [&](double j) {
    double r = grid(j);
    return gauge(r) * std::log(r) > target;
  };
  const double cap = std::ldexp(1.0, 60);
  double hi = 1.0;
  double lo = 0.0;
  while (!holds(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) {
      std::ostringstream os;
      os << "gauge grows too slowly for dimension n = " << n << ": phi(r) log r never exceeds sqrt(n+1) within the scan cap";
      throw ScheduleError(os.str());
    }
  }
  // smallest integer j in (lo, hi] with holds(j)
  while (hi - lo > 1.0) {
    double mid = std::floor(lo + (hi - lo) / 2.0);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  BaseConstants bc;
  bc.r0 = grid(hi);
  bc.eps0 = std::min(1.0, std::sqrt(gauge(1.0) / (n * bc.r0 * bc.r0 * (bc.r0 + 1.0) * (bc.r0 + 1.0))));
  return bc;
}

Schedule build_schedule(const std::vector<RationalCurve>& dict, const std::vector<double>& angles, std::size_t K,
                        const GrowthGauge& gauge, int n) {
  if (dict.empty()) throw std::invalid_argument("build_schedule: empty dictionary");
  if (angles.empty()) throw std::invalid_argument("build_schedule: empty angle set");
  if (K < 1) throw std::invalid_argument("build_schedule: K must be >= 1");
  for (const auto& c : dict) {
    if (c.dimension() != n) {
      std::ostringstream os;
      os << "build_schedule: dimension mismatch (curve has n = " << c.dimension() << ", schedule n = " << n << ")";
      throw std::invalid_argument(os.str());
    }
  }
  for (double a : angles) {
    if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) throw std::invalid_argument("build_schedule: angle outside [0, 2pi)");
  }

  Schedule s;
  s.n = n;
  s.gauge = gauge;
  auto bc = base_constants(gauge, n);
  s.r0 = bc.r0;
  s.eps0 = bc.eps0;

  std::vector<PoleCount> counts;
  for (const auto& c : dict) counts.push_back(pole_count(c));

  for (std::size_t u = 1; s.blocks.size() < K; ++u) {
    for (std::size_t ci = 0; ci < dict.size() && s.blocks.size() < K; ++ci) {
      for (std::size_t ai = 0; ai < angles.size() && s.blocks.size() < K; ++ai) {
        int k = static_cast<int>(s.blocks.size()) + 1;
        s.blocks.push_back(Block{dict[ci], u, angles[ai], decay_certificate(dict[ci], k), counts[ci].total, {}});
      }
    }
  }
  return s;
}

std::vector<RationalCurve> enumerate_R(int max_deg, int max_height, int n, const EnumerateOptions& opt) {
  if (max_deg < 1) throw std::invalid_argument("enumerate_R: max_deg must be >= 1");
  if (max_height < 1) throw std::invalid_argument("enumerate_R: max_height must be >= 1");
  if (n < 1) throw std::invalid_argument("enumerate_R: n must be >= 1");

  std::vector<mpq_class> rationals;
  for (int den = 1; den <= max_height; ++den) {
    for (int num = -max_height; num <= max_height; ++num) {
      if (std::gcd(num, den) != 1 && num != 0) continue;
      if (num == 0 && den != 1) continue;
      rationals.emplace_back(num, den);
    }
  }
  std::sort(rationals.begin(), rationals.end());
  std::vector<GaussianRational> values;
  for (const auto& x : rationals) {
    for (const auto& y : rationals) values.emplace_back(x, y);
  }
  const std::size_t V = values.size();
  const std::size_t zero = [&] {
    for (std::size_t i = 0; i < V; ++i) {
      if (values[i].is_zero()) return i;
    }
    return V;
  }();

  // Raw tuple count, checked against the cap before generating anything.
  double raw = 0.0;
  for (int d0 = 0; d0 <= max_deg; ++d0) {
    raw += std::pow(static_cast<double>(V), d0) * static_cast<double>(V - 1) *
           std::pow(static_cast<double>(V), static_cast<double>(n) * d0);
  }
  if (raw > static_cast<double>(opt.count_cap)) {
    std::ostringstream os;
    os << "enumerate_R: " << raw << " raw tuples exceed the count cap " << opt.count_cap;
    throw ScheduleError(os.str());
  }

  std::vector<RationalCurve> out;
  std::map<std::string, std::size_t> seen;
  for (int d0 = 0; d0 <= max_deg; ++d0) {
    // digits: p0 coefficients 0..d0 (top digit skips zero), then n blocks of d0 digits.
    const std::size_t nd = static_cast<std::size_t>(d0 + 1) + static_cast<std::size_t>(n) * d0;
    std::vector<std::size_t> digit(nd, 0);
    auto top_ok = [&] { return digit[d0] != zero; };
    while (true) {
      if (top_ok()) {
        std::vector<GaussianRational> c0;
        for (int i = 0; i <= d0; ++i) c0.push_back(values[digit[i]]);
        std::vector<GPoly> polys{GPoly(c0)};
        for (int j = 0; j < n; ++j) {
          std::vector<GaussianRational> cj;
          for (int i = 0; i < d0; ++i) cj.push_back(values[digit[d0 + 1 + j * d0 + i]]);
          polys.emplace_back(std::move(cj));
        }
        GaussianRational inv = GaussianRational(1) / polys[0].leading();
        std::string key;
        for (const auto& p : polys) {
          for (const auto& s : format_gpoly(p * inv)) key += s + ",";
          key += ";";
        }
        auto [it, fresh] = seen.emplace(key, out.size());
        if (fresh) {
          out.emplace_back(std::move(polys));
        } else if (polys[0].leading() == GaussianRational(1) &&
                   !(out[it->second].polys()[0].leading() == GaussianRational(1))) {
          out[it->second] = RationalCurve(std::move(polys));
        }
      }
      std::size_t pos = 0;
      while (pos < nd && ++digit[pos] == V) digit[pos++] = 0;
      if (pos == nd) break;
    }
  }
  return out;
}

std::string ConstraintMargins::first_violation() const {
  if (!(base > 0.0)) return "(i) |a_k| > R_k/eps0 + r0 + 1";
  if (!(separation > 0.0)) return "(ii) |a_k| - |a_{k-1}| - R_k - R_{k-1} > (R_1+...+R_{k-1})(k-1)2^k";
  if (!(growth > 0.0)) return "(iii) phi(|a_k| - R_k) > (n_1+...+n_k+sqrt(n+1)) log(|a_k|+R_k)/log(|a_k|-R_k)";
  if (!(clearance > 0.0)) return "(iv) |a_k| > R_k + 1";
  return {};
}

ConstraintMargins center_margins(const Schedule& s, std::size_t k, double m) {
  if (k < 1 || k > s.blocks.size()) throw std::out_of_range("center_margins: block index");
  const Block& b = s.blocks[k - 1];
  const double R = b.cert.R;
  ConstraintMargins cm;
  cm.base = m - (R / s.eps0 + s.r0 + 1.0);
  if (k == 1) {
    cm.separation = kInf;
  } else {
    const Block& prev = s.blocks[k - 2];
    if (!prev.modulus) throw ScheduleError("center_margins: previous block unresolved");
    double lhs = m - *prev.modulus - R - prev.cert.R;
    double rhs = radii_before(s, k) * static_cast<double>(k - 1) * std::ldexp(1.0, static_cast<int>(k));
    cm.separation = lhs - rhs;
  }
  if (m - R > 1.0) {
    double poles = static_cast<double>(poles_through(s, k)) + std::sqrt(s.n + 1.0);
    double rhs = poles * std::log(m + R) / std::log(m - R);
    cm.growth = s.gauge(m - R) - rhs;
  } else {
    cm.growth = -kInf;
  }
  cm.clearance = m - R - 1.0;
  return cm;
}

double resolve_center(const Schedule& s, std::size_t k) {
  if (k < 1 || k > s.blocks.size()) throw std::out_of_range("resolve_center: block index");
  for (std::size_t l = 0; l + 1 < k; ++l) {
    if (!s.blocks[l].modulus) throw ScheduleError("resolve_center: earlier blocks must be resolved first");
  }
  const Block& b = s.blocks[k - 1];
  const double R = b.cert.R;
  const double cap = s.magnitude_cap;
  auto ok = [&](double m) { return center_margins(s, k, m).ok(); };

  auto overflow = [&](const std::string& which) {
    std::ostringstream os;
    os << "gauge too slow: center modulus overflows the cap " << cap << " at block " << k << "; failing inequality "
       << which;
    return ScheduleError(os.str());
  };

  double bound = R / s.eps0 + s.r0 + 1.0;
  std::string which = "(i)";
  if (k >= 2) {
    const Block& prev = s.blocks[k - 2];
    double sep = *prev.modulus + R + prev.cert.R +
                 radii_before(s, k) * static_cast<double>(k - 1) * std::ldexp(1.0, static_cast<int>(k));
    if (sep > bound) {
      bound = sep;
      which = "(ii)";
    }
  }
  if (R + 1.0 > bound) {
    bound = R + 1.0;
    which = "(iv)";
  }
  double start = std::floor(bound) + 1.0;
  if (!(start <= cap)) throw overflow(which);

  double lo = std::max(0.0, start - 4.0);
  while (lo >= 1.0 && ok(lo)) lo -= 1.0;
  double hi = start;
  double step = 1.0;
  while (!ok(hi)) {
    lo = hi;
    if (hi >= cap) throw overflow(center_margins(s, k, cap).first_violation());
    hi = std::min(cap, start + step);
    step *= 2.0;
  }
  while (hi - lo > 1.0) {
    double mid = std::floor(lo + (hi - lo) / 2.0);
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void resolve_all(Schedule& s) {
  for (std::size_t k = 1; k <= s.blocks.size(); ++k) s.blocks[k - 1].modulus = resolve_center(s, k);
}

ScheduleAudit audit_schedule(const Schedule& s) {
  ScheduleAudit a;
  const double target = std::sqrt(s.n + 1.0);
  a.constants_ok = s.r0 > std::numbers::e;
  for (int i = 0; i <= 400 && a.constants_ok; ++i) {
    double r = s.r0 * std::pow(1.1, i);
    if (!(s.gauge(r) * std::log(r) > target)) a.constants_ok = false;
  }
  double eps0 = std::min(1.0, std::sqrt(s.gauge(1.0) / (s.n * s.r0 * s.r0 * (s.r0 + 1.0) * (s.r0 + 1.0))));
  if (eps0 != s.eps0) a.constants_ok = false;

  bool pass = a.constants_ok;
  for (std::size_t k = 1; k <= s.blocks.size(); ++k) {
    const Block& b = s.blocks[k - 1];
    BlockAudit ba;
    ba.k = k;
    if (!b.modulus) {
      pass = false;
      a.blocks.push_back(ba);
      continue;
    }
    double m = *b.modulus;
    ba.margins = center_margins(s, k, m);
    ba.minimal = !center_margins(s, k, m - 1.0).ok();
    ba.on_ray = m >= 1.0 && m == std::floor(m) && m <= s.magnitude_cap;
    ba.min_disc_gap_ratio = kInf;
    for (std::size_t l = 1; l < k; ++l) {
      const Block& o = s.blocks[l - 1];
      if (!o.modulus) continue;
      double gap = std::abs(b.center() - o.center()) - b.cert.R - o.cert.R;
      double need = o.cert.R * static_cast<double>(k - 1) * std::ldexp(1.0, static_cast<int>(k));
      ba.min_disc_gap_ratio = std::min(ba.min_disc_gap_ratio, gap / need);
    }
    pass = pass && ba.margins.ok() && ba.minimal && ba.on_ray && ba.min_disc_gap_ratio >= 1.0;
    a.blocks.push_back(ba);
  }
  a.pass = pass;
  return a;
}

}  // namespace uec
