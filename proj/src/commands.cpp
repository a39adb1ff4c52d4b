#include "uec/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "uec/csv.hpp"

namespace uec {

namespace {

using cd = std::complex<double>;

json num(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }
json point(cd z) { return json::array({num(z.real()), num(z.imag())}); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

std::string curve_text(const RationalCurve& c) {
  std::string s = "[";
  for (std::size_t j = 0; j < c.polys().size(); ++j) {
    if (j) s += " : ";
    s += pretty(c.polys()[j]);
  }
  return s + "]";
}

json margins_json(const ConstraintMargins& m) {
  return {{"i", num(m.base)}, {"ii", num(m.separation)}, {"iii", num(m.growth)}, {"iv", num(m.clearance)}};
}

double outer_radius(const Schedule& s) {
  double a = std::numbers::e;
  for (const auto& b : s.blocks) a = std::max(a, *b.modulus);
  return a;
}

struct Suite {
  json body;
  std::string status;  // pass, fail, skipped
  std::string failure;
};

Suite suite_separation(const UniversalCurve& u, const VerifyOptions& opt, const std::filesystem::path& out_dir) {
  Suite out;
  const Schedule& s = u.schedule();
  auto audit = audit_schedule(s);
  json blocks = json::array();
  bool ok = audit.pass;
  if (!audit.constants_ok) out.failure = "base constants r0/eps0 inconsistent with the gauge";
  for (const auto& ba : audit.blocks) {
    const BlockData& bd = u.blocks()[ba.k - 1];
    auto et = error_term_check(u, ba.k, opt.disc_grid);
    bool poles_inside = true;
    for (const auto& p : bd.local_poles) poles_inside = poles_inside && std::abs(p.z) < bd.R;
    ok = ok && et.pass() && poles_inside;
    if (out.failure.empty()) {
      std::string k = std::to_string(ba.k);
      if (!ba.margins.ok()) out.failure = "block " + k + " violates " + ba.margins.first_violation();
      else if (!ba.minimal) out.failure = "block " + k + ": modulus - 1 still satisfies every inequality";
      else if (!ba.on_ray) out.failure = "block " + k + ": modulus is not a positive integer";
      else if (!(ba.min_disc_gap_ratio >= 1.0)) out.failure = "block " + k + ": discs closer than R_l (k-1) 2^k";
      else if (!et.pass()) out.failure = "block " + k + ": |eps_j| >= 2^{-k+1} on its disc";
      else if (!poles_inside) out.failure = "block " + k + ": a pole lies outside D(a_k, R_k)";
    }
    blocks.push_back({{"k", ba.k},
                      {"margins", margins_json(ba.margins)},
                      {"minimal", ba.minimal},
                      {"on_ray", ba.on_ray},
                      {"min_disc_gap_ratio", num(ba.min_disc_gap_ratio)},
                      {"error_term", {{"max_abs", num(et.max_abs)}, {"bound", num(et.bound)}, {"points", et.points},
                                      {"violations", et.violations}}},
                      {"poles_inside_disc", poles_inside}});
  }
  auto samples = outside_disc_samples(u, opt.outside_samples, opt.seed);
  auto od = outside_disc_bound_check(u, samples);
  if (!od.pass() && out.failure.empty()) out.failure = "|h_j| >= 1 outside all discs";
  ok = ok && od.pass();
  if (!out_dir.empty()) {
    std::ostringstream csv;
    write_point_csv(csv, u, samples);
    write_text(out_dir / "outside_samples.csv", csv.str());
  }
  out.body = {{"constants_ok", audit.constants_ok},
              {"blocks", blocks},
              {"outside_discs", {{"evaluated", od.evaluated}, {"rejected", od.rejected}, {"violations", od.violations},
                                 {"max_abs", num(od.max_abs)}, {"worst_point", point(od.worst_point)}}}};
  out.status = ok ? "pass" : "fail";
  return out;
}

Suite suite_growth(const UniversalCurve& u, const VerifyOptions& opt, const std::filesystem::path& out_dir) {
  Suite out;
  GrowthOptions go;
  go.quad = QuadOptions{opt.quad_tol, opt.quad_depth};
  go.lemma_slack = opt.lemma_slack;
  go.monotone_slack = opt.monotone_slack;
  go.jobs = opt.jobs;
  auto grid = log_grid(1.0, opt.growth_span * outer_radius(u.schedule()), opt.growth_points);
  auto rep = growth_report(u, grid, go);
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t nudged = 0;
  for (const auto& row : rep.rows) {
    if (row.r > 1.0) min_margin = std::min(min_margin, row.margin);
    nudged += row.nudged ? 1 : 0;
  }
  if (!out_dir.empty()) {
    std::ostringstream csv;
    write_growth_csv(csv, rep);
    write_text(out_dir / "growth.csv", csv.str());
  }
  out.body = {{"points", rep.rows.size()},
              {"r_max", num(grid.back())},
              {"m1", num(rep.m1)},
              {"theorem_ok", rep.theorem_ok},
              {"lemma_ok", rep.lemma_ok},
              {"monotone_ok", rep.monotone_ok},
              {"min_margin", num(min_margin)},
              {"nudged_radii", nudged}};
  out.status = rep.pass() ? "pass" : "fail";
  out.failure = rep.first_failure;
  return out;
}

Suite suite_approx(const UniversalCurve& u, const VerifyOptions& opt) {
  Suite out;
  json blocks = json::array();
  bool any = false;
  bool ok = true;
  for (const auto& b : u.blocks()) {
    if (!(b.R > opt.universality_N)) continue;
    auto rep = universality_check(u, b.k, opt.universality_N, opt.universality_eps, opt.universality_grid);
    blocks.push_back({{"k", b.k},
                      {"sigma", num(rep.sigma)},
                      {"M", num(rep.M)},
                      {"delta", num(rep.delta)},
                      {"max_error_term", num(rep.max_error_term)},
                      {"precondition", rep.precondition},
                      {"sup_distance", num(rep.sup_distance)},
                      {"worst_point", point(rep.worst_point)}});
    if (!rep.precondition) continue;
    any = true;
    if (!rep.pass()) {
      ok = false;
      if (out.failure.empty()) out.failure = "block " + std::to_string(b.k) + ": translate leaves the eps/2 band";
    }
  }
  out.body = {{"N", num(opt.universality_N)}, {"eps", num(opt.universality_eps)}, {"blocks", blocks}};
  if (!any) {
    out.status = "skipped";
    out.body["reason"] = "no block has R_k > N together with the error-term precondition; extend K";
  } else {
    out.status = ok ? "pass" : "fail";
  }
  return out;
}

Suite suite_fmt(const UniversalCurve& u, const VerifyOptions& opt, const std::filesystem::path& out_dir) {
  Suite out;
  if (!opt.enable_area) {
    out.status = "skipped";
    out.body = {{"reason", "area integral disabled (enable_area / --enable-area)"}};
    return out;
  }
  QuadOptions q{opt.quad_tol, opt.quad_depth};
  auto radii = log_grid(1.5, opt.growth_span * outer_radius(u.schedule()), opt.fmt_radii);
  std::ostringstream csv;
  csv << "r,T_fmt,T_area,T_area_err,diff,allowed\n";
  json rows = json::array();
  bool ok = true;
  for (double r : radii) {
    for (int guard = 0; guard < 1000; ++guard) {
      bool close = false;
      for (const auto& p : u.poles()) close = close || std::abs(std::abs(p.z) - r) < 1.0;
      if (!close) break;
      r *= 1.01;
    }
    double tf = characteristic_fmt(u, r, q);
    auto ta = characteristic_area(u, r, q);
    double diff = std::abs(ta.value - tf);
    double allowed = std::max(opt.fmt_tol, opt.fmt_tol * tf);
    if (!(diff <= allowed)) {
      ok = false;
      if (out.failure.empty()) out.failure = "|T_area - T_fmt| = " + format_double(diff) + " at r = " + format_double(r);
    }
    rows.push_back({{"r", num(r)}, {"T_fmt", num(tf)}, {"T_area", num(ta.value)}, {"T_area_err", num(ta.error)},
                    {"diff", num(diff)}});
    csv << format_double(r) << ',' << format_double(tf) << ',' << format_double(ta.value) << ','
        << format_double(ta.error) << ',' << format_double(diff) << ',' << format_double(allowed) << '\n';
  }
  if (!out_dir.empty()) write_text(out_dir / "fmt_consistency.csv", csv.str());
  out.body = {{"radii", rows}, {"tol", num(opt.fmt_tol)}};
  out.status = ok ? "pass" : "fail";
  return out;
}

}  // namespace

std::vector<RationalCurve> assemble_dictionary(const RunConfig& cfg, std::vector<RungeResult>* runge_out) {
  std::vector<RationalCurve> dict = cfg.curves;
  for (const auto& t : cfg.runge) {
    auto res = rationalize(t.spec, t.N, t.eps);
    dict.push_back(res.curve);
    if (runge_out) runge_out->push_back(std::move(res));
  }
  if (cfg.enumerate) {
    auto e = enumerate_R(cfg.enumerate->max_deg, cfg.enumerate->max_height, cfg.n,
                         EnumerateOptions{cfg.enumerate->count_cap});
    if (cfg.enumerate->limit > 0 && e.size() > cfg.enumerate->limit) e.erase(e.begin() + static_cast<std::ptrdiff_t>(cfg.enumerate->limit), e.end());
    dict.insert(dict.end(), e.begin(), e.end());
  }
  return dict;
}

std::string schedule_summary(const Schedule& s) {
  std::ostringstream os;
  os << "n = " << s.n << "\n";
  os << "gauge = " << gauge_to_json(s.gauge).dump() << "\n";
  os << "r0 = " << format_double(s.r0) << "\n";
  os << "eps0 = " << format_double(s.eps0) << "\n";
  os << "blocks = " << s.blocks.size() << "\n";
  for (std::size_t k = 1; k <= s.blocks.size(); ++k) {
    const Block& b = s.blocks[k - 1];
    os << "\nblock " << k << "\n";
    os << "  curve  " << curve_text(b.curve) << "\n";
    os << "  rep " << b.rep << "  angle " << format_double(b.angle) << "\n";
    os << "  delta " << format_double(b.cert.delta) << "  C " << format_double(b.cert.C) << "  R "
       << format_double(b.cert.R) << "  n_k " << b.n_poles << "\n";
    if (b.modulus) {
      auto m = center_margins(s, k, *b.modulus);
      os << "  |a_k| " << format_double(*b.modulus) << "\n";
      os << "  margins (i) " << format_double(m.base) << "  (ii) " << format_double(m.separation) << "  (iii) "
         << format_double(m.growth) << "  (iv) " << format_double(m.clearance) << "\n";
    } else {
      os << "  |a_k| unresolved\n";
    }
  }
  return os.str();
}

ScheduleOutcome cmd_schedule(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  auto dict = assemble_dictionary(cfg);
  Schedule s = build_schedule(dict, cfg.angles, cfg.K, cfg.gauge, cfg.n);
  s.magnitude_cap = cfg.magnitude_cap;
  resolve_all(s);
  ScheduleOutcome out{s, schedule_summary(s)};
  if (!out_dir.empty()) {
    save_schedule(s, out_dir / "schedule.json");
    write_text(out_dir / "summary.txt", out.summary);
  }
  return out;
}

VerifyOutcome cmd_verify(const Schedule& s, const std::string& which, const VerifyOptions& opt,
                         const std::filesystem::path& out_dir) {
  static const std::vector<std::string> names{"separation", "growth", "approx", "fmt-consistency"};
  std::vector<std::string> selected;
  if (which == "all") {
    selected = names;
  } else if (std::find(names.begin(), names.end(), which) != names.end()) {
    selected = {which};
  } else {
    throw std::invalid_argument("unknown suite '" + which + "'");
  }

  UniversalCurve u(s);
  VerifyOutcome out;
  out.pass = true;
  json suites = json::object();
  std::string first_failure;
  for (const auto& name : selected) {
    Suite r;
    if (name == "separation") r = suite_separation(u, opt, out_dir);
    if (name == "growth") r = suite_growth(u, opt, out_dir);
    if (name == "approx") r = suite_approx(u, opt);
    if (name == "fmt-consistency") r = suite_fmt(u, opt, out_dir);
    r.body["status"] = r.status;
    if (!r.failure.empty()) r.body["failure"] = r.failure;
    if (r.status == "fail") {
      out.pass = false;
      if (first_failure.empty()) first_failure = name + ": " + r.failure;
    }
    suites[name] = r.body;
  }
  out.report = {{"suites", suites}, {"pass", out.pass}, {"blocks", s.blocks.size()}};
  if (!first_failure.empty()) out.report["first_failure"] = first_failure;
  if (!out_dir.empty()) write_text(out_dir / "verify_report.json", dump(out.report));
  return out;
}

void cmd_eval(const Schedule& s, const std::vector<cd>& points, std::ostream& csv) {
  UniversalCurve u(s);
  write_point_csv(csv, u, points);
}

GrowthReport cmd_sweep(const Schedule& s, double r_lo, double r_hi, std::size_t count, const GrowthOptions& opt,
                       std::ostream& csv) {
  if (!(r_lo >= 1.0)) throw std::invalid_argument("sweep: r range must start at >= 1");
  UniversalCurve u(s);
  auto rep = growth_report(u, log_grid(r_lo, r_hi, count), opt);
  write_growth_csv(csv, rep);
  return rep;
}

std::string cmd_runge_fit(const RungeTarget& t) {
  auto res = rationalize(t.spec, t.N, t.eps);
  std::ostringstream os;
  if (!t.name.empty()) os << "target " << t.name << "\n";
  os << "N = " << format_double(t.N) << "  eps = " << format_double(t.eps) << "  mu = " << format_double(res.mu)
     << "\n";
  for (std::size_t j = 0; j < res.taylor_degrees.size(); ++j) {
    os << "component " << j << ": taylor degree " << res.taylor_degrees[j] << ", rounding denominator "
       << res.denominators[j] << "\n";
  }
  os << "degree bump: Q = " << res.bump.Q << ", M = " << res.bump.M << "\n";
  for (std::size_t j = 0; j < res.curve.polys().size(); ++j) {
    os << "p_" << j << " = " << pretty(res.curve.polys()[j]) << "\n";
  }
  os << "grid points " << res.grid_points << ", max d_FS " << format_double(res.max_grid_distance) << " at "
     << format_double(res.worst_point.real()) << (res.worst_point.imag() < 0 ? "" : "+")
     << format_double(res.worst_point.imag()) << "i\n";
  os << "curve json " << curve_to_json(res.curve).dump() << "\n";
  return os.str();
}

}  // namespace uec
