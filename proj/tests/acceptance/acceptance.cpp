// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../unit/oracle.hpp"
#include "uec/commands.hpp"
#include "uec/config.hpp"
#include "uec/curve.hpp"
#include "uec/nevanlinna.hpp"
#include "uec/rational_eval.hpp"
#include "uec/runge.hpp"
#include "uec/scheduler.hpp"

namespace fs = std::filesystem;
using namespace uec;
using cd = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail_if(bool bad, const std::string& why) {
    if (!bad) return;
    if (!pass) detail << "; ";
    else detail.str("");
    pass = false;
    detail << why;
  }
};

struct Context {
  fs::path out;
  fs::path configs;
  unsigned jobs = 1;
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

Schedule schedule_from(const fs::path& config) {
  RunConfig cfg = load_config(config);
  Schedule s = build_schedule(assemble_dictionary(cfg), cfg.angles, cfg.K, cfg.gauge, cfg.n);
  resolve_all(s);
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// C1: T_fmt(r) < phi(r) log r on 200 log-spaced radii up to 2|a_K|.
Verdict growth(const Context& ctx) {
  Verdict v;
  std::ostringstream parts;
  for (const char* name : {"schedule_a", "schedule_b"}) {
    Schedule s = schedule_from(ctx.configs / (std::string(name) + ".json"));
    UniversalCurve u(s);
    auto grid = log_grid(1.0, 2.0 * *s.blocks.back().modulus, 200);
    GrowthOptions opt;
    opt.jobs = ctx.jobs;
    GrowthReport rep = growth_report(u, grid, opt);
    std::ofstream csv(ctx.out / (std::string("growth_") + name + ".csv"));
    write_growth_csv(csv, rep);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rep.rows.size(); ++i) worst = std::min(worst, rep.rows[i].margin);
    parts << name << " (n=" << s.n << ", K=" << s.blocks.size() << "): min margin " << fmt(worst)
          << ", lemma " << (rep.lemma_ok ? "ok" : "violated") << ", monotone " << (rep.monotone_ok ? "ok" : "violated")
          << "; ";
    v.fail_if(!rep.theorem_ok, std::string(name) + ": T_fmt reaches phi log r");
  }
  if (v.pass) v.detail << parts.str() << "200 radii each";
  return v;
}

// C2: audit plus an independent integer scan for every center.
Verdict separation(const Context& ctx) {
  Verdict v;
  std::size_t blocks = 0;
  for (const char* name : {"schedule_a", "schedule_b"}) {
    Schedule s = schedule_from(ctx.configs / (std::string(name) + ".json"));
    ScheduleAudit a = audit_schedule(s);
    v.fail_if(!a.pass, std::string(name) + ": audit failed");
    for (std::size_t k = 1; k <= s.blocks.size(); ++k) {
      ++blocks;
      double m = *s.blocks[k - 1].modulus;
      double scan = testing::brute_force_center(s, k, m + 1.0);
      v.fail_if(scan != m, std::string(name) + " block " + std::to_string(k) + ": scan gives " + fmt(scan, 17) +
                               ", resolver " + fmt(m, 17));
      v.fail_if(center_margins(s, k, m - 1.0).ok(),
                std::string(name) + " block " + std::to_string(k) + ": m - 1 still admissible");
    }
  }
  if (v.pass) v.detail << blocks << " centers: margins positive, equal to the brute-force minimum, m - 1 rejected";
  return v;
}

// C3: |h_j| < 1 outside the discs, |eps^[k]| < 2^{-k+1} on each disc.
Verdict outside(const Context& ctx) {
  Verdict v;
  double worst_out = 0.0, worst_ratio = 0.0;
  for (const char* name : {"schedule_a", "schedule_b"}) {
    UniversalCurve u(schedule_from(ctx.configs / (std::string(name) + ".json")));
    OutsideDiscReport rep = outside_disc_bound_check(u, outside_disc_samples(u, 1000, 0));
    v.fail_if(rep.evaluated != 1000, std::string(name) + ": only " + std::to_string(rep.evaluated) + " samples");
    v.fail_if(!rep.pass(), std::string(name) + ": " + std::to_string(rep.violations) + " samples with |h_j| >= 1");
    worst_out = std::max(worst_out, rep.max_abs);
    for (std::size_t k = 1; k <= u.schedule().blocks.size(); ++k) {
      ErrorTermReport e = error_term_check(u, k, 17);
      v.fail_if(!e.pass(), std::string(name) + " disc " + std::to_string(k) + ": error term " + fmt(e.max_abs) +
                               " >= " + fmt(e.bound));
      worst_ratio = std::max(worst_ratio, e.max_abs / e.bound);
    }
  }
  if (v.pass)
    v.detail << "max |h_j| outside = " << fmt(worst_out) << ", max error term / bound = " << fmt(worst_ratio);
  return v;
}

// C4: translate h(z + a_k) stays within 0.1 of the dictionary curve on D_2.
Verdict universality(const Context& ctx) {
  Verdict v;
  RunConfig cfg = load_config(ctx.configs / "schedule_a.json");
  auto dict = assemble_dictionary(cfg);
  const double N = 2.0, eps = 0.1;
  for (std::size_t K = 6; K <= 10; ++K) {
    Schedule s = build_schedule(dict, cfg.angles, K, cfg.gauge, cfg.n);
    resolve_all(s);
    UniversalCurve u(s);
    for (std::size_t k = 1; k <= K; ++k) {
      if (!(s.blocks[k - 1].cert.R > N)) continue;
      UniversalityReport r = universality_check(u, k, N, eps, 41);
      if (!r.precondition) continue;
      v.fail_if(!(r.sup_distance < eps), "block " + std::to_string(k) + ": sup d_FS = " + fmt(r.sup_distance));
      if (v.pass) {
        v.detail << "block " << k << " of K=" << K << ": sup d_FS = " << fmt(r.sup_distance) << " over 41x41 grid";
        if (K > 6) v.detail << " (K extended from 6)";
      }
      return v;
    }
  }
  v.fail_if(true, "no block up to K=10 has R_k > 2 with the error-term precondition");
  return v;
}

std::string name_of(const RationalCurve& c) {
  std::string s = "[";
  for (std::size_t j = 0; j < c.polys().size(); ++j) s += (j ? " : " : "") + pretty(c.polys()[j]);
  return s + "]";
}

long double exp_tail(double x, int d) {
  long double term = 1.0L, sum = 0.0L;
  for (int k = 1; k <= 300; ++k) {
    term *= x / k;
    if (k > d) sum += term;
  }
  return sum;
}

// C5: safe approximation, exact degrees and an independent grid check.
Verdict runge(const Context&) {
  Verdict v;
  struct Case {
    std::string name;
    EntireCurveSpec f;
    double N, eps;
    std::function<bool(const RungeResult&)> degrees;
  };
  std::vector<Case> cases;
  cases.push_back({"[1 : e^z]", {{constant_component(1.0), exp_component(1.0, 1.0)}, 1.0}, 2.0, 0.05,
                   [](const RungeResult& r) {
                     long double target = mu_for_epsilon(0.05) / (4.0 * std::sqrt(2.0));
                     int d = static_cast<int>(r.taylor_degrees[1]);
                     return r.taylor_degrees[0] == 0 && exp_tail(2.0, d) < target && exp_tail(2.0, d - 1) >= target;
                   }});
  cases.push_back({"[1 : 3/10 - 7i/10]",
                   {{constant_component(1.0), constant_component(cd(0.3, -0.7))}, 1.0},
                   2.0,
                   0.01,
                   [](const RungeResult& r) { return r.taylor_degrees[0] == 0 && r.taylor_degrees[1] == 0; }});
  cases.push_back({"[1 : 1 + z + z^2/2 : z]",
                   {{constant_component(1.0), polynomial_component({1.0, 1.0, 0.5}), polynomial_component({0.0, 1.0})},
                    1.0},
                   1.5,
                   0.01,
                   [](const RungeResult& r) {
                     return r.taylor_degrees[0] == 0 && r.taylor_degrees[1] == 2 && r.taylor_degrees[2] == 1;
                   }});
  std::ostringstream parts;
  for (const auto& c : cases) {
    RungeResult r = rationalize(c.f, c.N, c.eps);
    const auto& p = r.curve.polys();
    bool shape = p.size() == c.f.components.size();
    for (std::size_t j = 1; shape && j < p.size(); ++j) shape = p[j].degree() < p[0].degree();
    v.fail_if(!shape, c.name + ": not in the admissible set");
    v.fail_if(!c.degrees(r), c.name + ": Taylor degrees not minimal");
    double sup = 0.0;
    auto grid = disc_grid(c.N);
    for (const cd& z : grid) sup = std::max(sup, fs_distance(eval_homog(r.curve, z), ProjPoint(c.f.value(z))));
    v.fail_if(!(sup < c.eps), c.name + ": grid distance " + fmt(sup) + " >= " + fmt(c.eps));
    parts << c.name << " sup " << fmt(sup, 3) << " < " << c.eps << " on " << grid.size() << " points; ";
  }
  if (v.pass) v.detail << parts.str();
  return v;
}

// C6: closed forms.
Verdict closed_forms(const Context&) {
  Verdict v;
  RationalMap inv({parse_gpoly({"0", "1"}), parse_gpoly({"1"})});
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double r = std::pow(1000.0, i / 49.0);
    double exact = 0.5 * std::log1p(r * r) - 0.5 * std::numbers::ln2;
    worst = std::max(worst, std::abs(characteristic_fmt(inv, r) - exact));
  }
  v.fail_if(!(worst <= 1e-6), "[1 : 1/z] off by " + fmt(worst));
  double worst_const = 0.0;
  for (const std::vector<std::vector<std::string>>& polys :
       {std::vector<std::vector<std::string>>{{"1"}, {"0"}}, {{"1"}, {"-3/7"}}, {{"2"}, {"1/2"}, {"-7/3"}}}) {
    std::vector<GPoly> ps;
    for (const auto& c : polys) ps.push_back(parse_gpoly(c));
    RationalMap m(ps);
    for (double r : {1.0, 2.0, 10.0, 100.0, 1000.0}) {
      worst_const = std::max(worst_const, std::abs(characteristic_fmt(m, r)));
      worst_const = std::max(worst_const, std::abs(characteristic_area(m, r).value));
    }
  }
  v.fail_if(!(worst_const <= 1e-10), "constant curve T = " + fmt(worst_const));
  if (v.pass)
    v.detail << "[1 : 1/z] max error " << fmt(worst, 3) << " on 50 radii; constant curves |T| <= " << fmt(worst_const, 3);
  return v;
}

// C7: area integral against the first-main-theorem route.
Verdict fmt_consistency(const Context& ctx) {
  Verdict v;
  RunConfig cfg = load_config(ctx.configs / "schedule_a.json");
  Schedule s = build_schedule(assemble_dictionary(cfg), cfg.angles, 2, cfg.gauge, cfg.n);
  resolve_all(s);
  UniversalCurve u(s);
  auto radii = log_grid(2.0, 2.0 * *s.blocks.back().modulus, 10);
  double worst = 0.0;
  for (double r : radii) {
    // keep the circle at least 1 away from every pole
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& p : u.poles())
        if (std::abs(std::abs(p.z) - r) < 1.0) {
          r += 1.0;
          moved = true;
        }
    }
    double f = characteristic_fmt(u, r);
    Estimate a = characteristic_area(u, r);
    double gap = std::abs(a.value - f);
    worst = std::max(worst, gap / std::max(1.0, f));
    v.fail_if(!(gap <= std::max(1e-2, 1e-2 * f)),
              "r = " + fmt(r) + ": area " + fmt(a.value, 10) + " vs " + fmt(f, 10));
  }
  if (v.pass) v.detail << "10 radii, max |T_area - T_fmt| / max(1, T) = " << fmt(worst, 3);
  return v;
}

// C8: |g_j(z)| < 2^{-k} R_k / |z| beyond R_k.
Verdict decay(const Context& ctx) {
  Verdict v;
  std::vector<RationalCurve> dict;
  for (const char* name : {"schedule_a", "schedule_b"})
    for (auto& c : assemble_dictionary(load_config(ctx.configs / (std::string(name) + ".json")))) dict.push_back(c);
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t samples = 0;
  double worst = 0.0;
  for (const auto& c : dict) {
    auto comps = affine_components(c);
    for (int k = 1; k <= 8; ++k) {
      DecayCertificate cert = decay_certificate(c, k);
      std::size_t bad = 0;
      for (int i = 0; i < 4096; ++i) {
        double rho = cert.R * std::pow(1e3, unit(rng));
        if (!(rho > cert.R)) continue;
        cd z = std::polar(rho, 2.0 * std::numbers::pi * unit(rng));
        double bound = std::ldexp(cert.R, -k) / rho;
        for (const auto& g : comps) {
          double val = std::abs(eval_rational(to_cpoly(g.num), to_cpoly(g.den), z));
          worst = std::max(worst, val / bound);
          if (!(val < bound)) ++bad;
        }
        ++samples;
      }
      v.fail_if(bad > 0, name_of(c) + " k=" + std::to_string(k) + ": " + std::to_string(bad) + " violations");
    }
  }
  if (v.pass)
    v.detail << dict.size() << " curves x k <= 8, " << samples << " samples, max |g_j| / bound = " << fmt(worst, 3);
  return v;
}

// C9: central differences approach h' at rate delta^2.
Verdict derivative(const Context& ctx) {
  Verdict v;
  RunConfig cfg = load_config(ctx.configs / "schedule_a.json");
  Schedule s = build_schedule(assemble_dictionary(cfg), cfg.angles, 4, cfg.gauge, cfg.n);
  resolve_all(s);
  UniversalCurve u(s);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double steps[] = {1e-3, 1e-4, 1e-5};
  const double ulp = std::numeric_limits<double>::epsilon();
  std::size_t points = 0, truncation_limited = 0;
  std::vector<double> orders;
  while (points < 100) {
    // annuli 1..3 around the poles, where the third derivative is not negligible
    const Pole& pole = u.poles()[points % u.poles().size()];
    cd z = pole.z + std::polar(1.0 + 2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
    if (!(u.pole_distance(z) >= 1.0)) continue;
    const Block& b = s.blocks[*u.in_disc(pole.z) - 1];
    ++points;
    Eigen::VectorXcd exact = u.eval_derivative(z);
    // rounding acts on the offset from the block center, not on z itself
    double scale = u.eval_affine(z).norm() + std::abs(z - b.center()) * exact.norm();
    double err[3], floor[3];
    for (int i = 0; i < 3; ++i) {
      double d = steps[i];
      cd hi = z + d, lo = z - d;
      Eigen::VectorXcd fd = (u.eval_affine(hi) - u.eval_affine(lo)) / (hi - lo);
      err[i] = (fd - exact).norm();
      floor[i] = 8.0 * ulp * scale / d;
    }
    // the largest step fixes the constant of the delta^2 law
    double C = err[0] / (steps[0] * steps[0]);
    for (int i = 1; i < 3; ++i)
      if (!(err[i] <= 1.5 * C * steps[i] * steps[i] + floor[i]))
        v.fail_if(true, "z = " + fmt(z.real()) + "+" + fmt(z.imag()) + "i, step " + fmt(steps[i]) + ": error " +
                            fmt(err[i]) + " above the delta^2 law");
    if (err[1] > 10.0 * floor[1]) {
      ++truncation_limited;
      orders.push_back(std::log10(err[0] / err[1]));
    }
  }
  std::sort(orders.begin(), orders.end());
  double median = orders.empty() ? 0.0 : orders[orders.size() / 2];
  v.fail_if(orders.size() < 20, "too few points where truncation dominates rounding");
  v.fail_if(!orders.empty() && std::abs(median - 2.0) > 0.2, "median observed order " + fmt(median));
  if (v.pass)
    v.detail << "100 points, observed order " << fmt(median, 4) << " (median over " << truncation_limited
             << " truncation-dominated points)";
  return v;
}

// C10: two runs of schedule + verify give byte-identical files.
Verdict determinism(const Context& ctx) {
  Verdict v;
  RunConfig cfg = load_config(ctx.configs / "schedule_a.json");
  fs::path dirs[2] = {ctx.out / "determinism_1", ctx.out / "determinism_2"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    fs::create_directories(d);
    ScheduleOutcome o = cmd_schedule(cfg, d);
    cmd_verify(o.schedule, "all", cfg.verify, d);
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dirs[0])) {
    fs::path other = dirs[1] / e.path().filename();
    ++files;
    v.fail_if(!fs::exists(other), e.path().filename().string() + " missing from the second run");
    if (fs::exists(other))
      v.fail_if(slurp(e.path()) != slurp(other), e.path().filename().string() + " differs between runs");
  }
  v.fail_if(files == 0, "no output files");
  if (v.pass) v.detail << files << " files byte-identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria C1-C10"};
  Context ctx;
  std::string out = "acceptance_out";
  std::string configs = UEC_CONFIG_DIR;
  ctx.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--out", out, "directory for CSV artifacts");
  app.add_option("--configs", configs, "directory holding schedule_a.json and schedule_b.json");
  app.add_option("--jobs", ctx.jobs, "worker threads for the growth sweep");
  CLI11_PARSE(app, argc, argv);
  ctx.out = out;
  ctx.configs = configs;
  fs::create_directories(ctx.out);

  const std::vector<std::pair<std::string, std::function<Verdict(const Context&)>>> criteria = {
      {"C1", growth},    {"C2", separation},      {"C3", outside}, {"C4", universality}, {"C5", runge},
      {"C6", closed_forms}, {"C7", fmt_consistency}, {"C8", decay},   {"C9", derivative},   {"C10", determinism}};

  bool all = true;
  for (const auto& [id, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run(ctx);
    } catch (const std::exception& e) {
      v.fail_if(true, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && v.pass;
    std::cout << id << (id.size() == 2 ? "  " : " ") << (v.pass ? "PASS" : "FAIL") << "  " << v.detail.str() << " ["
              << fmt(secs, 3) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
