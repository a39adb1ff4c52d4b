#include "uec/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace uec {

namespace {

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError(where + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": bad value for '" + key + "': " + e.what());
  }
}

template <class T>
void get_if(const json& obj, const char* key, T& out, const std::string& where) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_number(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw FormatError(where + ": cannot read number '" + s + "'");
  return v;
}

std::complex<double> complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return GaussianRational::parse(j.get<std::string>()).to_complex();
    } catch (const std::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  throw FormatError(where + ": expected a number or a Gaussian-rational string");
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw FormatError(std::string("verify: ") + name + " must be positive");
}

}  // namespace

double parse_angle(const json& j) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    std::string s = trim(j.get<std::string>());
    auto at = s.find("pi");
    if (at == std::string::npos) {
      v = to_number(s, "angle");
    } else {
      std::string head = trim(s.substr(0, at));
      std::string tail = trim(s.substr(at + 2));
      double num = 1.0;
      double den = 1.0;
      if (!head.empty()) {
        if (head.back() != '*') throw FormatError("angle: expected 'a*pi/b', got '" + s + "'");
        num = to_number(trim(head.substr(0, head.size() - 1)), "angle");
      }
      if (!tail.empty()) {
        if (tail.front() != '/') throw FormatError("angle: expected 'a*pi/b', got '" + s + "'");
        den = to_number(trim(tail.substr(1)), "angle");
      }
      v = num * std::numbers::pi / den;
    }
  } else {
    throw FormatError("angle: expected a number or a string");
  }
  if (!(v >= 0.0 && v < 2.0 * std::numbers::pi)) throw FormatError("angle outside [0, 2pi)");
  return v;
}

EntireComponent component_from_json(const json& j) {
  const std::string where = "component";
  std::string kind = get<std::string>(j, "kind", where);
  if (kind == "constant") {
    expect_keys(j, {"kind", "b"}, where);
    return constant_component(complex_value(j.at("b"), where));
  }
  if (kind == "polynomial") {
    expect_keys(j, {"kind", "coeffs"}, where);
    std::vector<std::complex<double>> c;
    for (const auto& x : j.at("coeffs")) c.push_back(complex_value(x, where));
    return polynomial_component(std::move(c));
  }
  if (kind == "exp" || kind == "sin" || kind == "cos") {
    expect_keys(j, {"kind", "a", "b"}, where);
    auto a = j.contains("a") ? complex_value(j.at("a"), where) : std::complex<double>(1.0);
    auto b = j.contains("b") ? complex_value(j.at("b"), where) : std::complex<double>(1.0);
    if (kind == "exp") return exp_component(a, b);
    if (kind == "sin") return sin_component(a, b);
    return cos_component(a, b);
  }
  throw FormatError("component: unknown kind '" + kind + "'");
}

RungeTarget runge_target_from_json(const json& j) {
  const std::string where = "runge target";
  expect_keys(j, {"name", "components", "sigma", "N", "eps"}, where);
  RungeTarget t;
  get_if(j, "name", t.name, where);
  for (const auto& c : j.at("components")) t.spec.components.push_back(component_from_json(c));
  get_if(j, "sigma", t.spec.sigma, where);
  t.N = get<double>(j, "N", where);
  t.eps = get<double>(j, "eps", where);
  return t;
}

VerifyOptions verify_options_from_json(const json& j) {
  const std::string where = "verify";
  expect_keys(j,
              {"growth_points", "growth_span", "outside_samples", "disc_grid", "universality_N", "universality_eps",
               "universality_grid", "fmt_radii", "fmt_tol", "enable_area", "quad_tol", "quad_depth", "lemma_slack",
               "monotone_slack", "seed", "jobs"},
              where);
  VerifyOptions v;
  get_if(j, "growth_points", v.growth_points, where);
  get_if(j, "growth_span", v.growth_span, where);
  get_if(j, "outside_samples", v.outside_samples, where);
  get_if(j, "disc_grid", v.disc_grid, where);
  get_if(j, "universality_N", v.universality_N, where);
  get_if(j, "universality_eps", v.universality_eps, where);
  get_if(j, "universality_grid", v.universality_grid, where);
  get_if(j, "fmt_radii", v.fmt_radii, where);
  get_if(j, "fmt_tol", v.fmt_tol, where);
  get_if(j, "enable_area", v.enable_area, where);
  get_if(j, "quad_tol", v.quad_tol, where);
  get_if(j, "quad_depth", v.quad_depth, where);
  get_if(j, "lemma_slack", v.lemma_slack, where);
  get_if(j, "monotone_slack", v.monotone_slack, where);
  get_if(j, "seed", v.seed, where);
  get_if(j, "jobs", v.jobs, where);
  require_positive(v.growth_span, "growth_span");
  require_positive(v.universality_N, "universality_N");
  require_positive(v.universality_eps, "universality_eps");
  require_positive(v.fmt_tol, "fmt_tol");
  require_positive(v.quad_tol, "quad_tol");
  require_positive(v.lemma_slack, "lemma_slack");
  require_positive(v.monotone_slack, "monotone_slack");
  if (v.growth_points < 1) throw FormatError("verify: growth_points must be >= 1");
  if (v.disc_grid < 2 || v.universality_grid < 2) throw FormatError("verify: grids need at least 2 points per side");
  if (v.quad_depth < 1) throw FormatError("verify: quad_depth must be >= 1");
  return v;
}

RunConfig parse_config(const json& j) {
  const std::string where = "config";
  expect_keys(j, {"n", "gauge", "dictionary", "angles", "K", "verify", "output", "magnitude_cap"}, where);
  RunConfig c;
  c.n = get<int>(j, "n", where);
  if (c.n < 1) throw FormatError("config: n must be >= 1");
  c.gauge = gauge_from_json(j.at("gauge"));

  const json& d = j.at("dictionary");
  expect_keys(d, {"curves", "runge", "enumerate"}, "dictionary");
  if (d.contains("curves")) {
    for (const auto& jc : d.at("curves")) c.curves.push_back(curve_from_json(jc));
  }
  if (d.contains("runge")) {
    for (const auto& jt : d.at("runge")) c.runge.push_back(runge_target_from_json(jt));
  }
  if (d.contains("enumerate")) {
    const json& e = d.at("enumerate");
    expect_keys(e, {"max_deg", "max_height", "limit", "count_cap"}, "enumerate");
    EnumerateSpec es;
    es.max_deg = get<int>(e, "max_deg", "enumerate");
    es.max_height = get<int>(e, "max_height", "enumerate");
    get_if(e, "limit", es.limit, "enumerate");
    get_if(e, "count_cap", es.count_cap, "enumerate");
    c.enumerate = es;
  }
  if (c.curves.empty() && c.runge.empty() && !c.enumerate) throw FormatError("dictionary: no curves given");
  for (const auto& cv : c.curves) {
    if (cv.dimension() != c.n) throw FormatError("dictionary: curve dimension differs from n");
  }
  for (const auto& t : c.runge) {
    if (t.spec.dimension() != c.n) throw FormatError("dictionary: runge target dimension differs from n");
  }

  for (const auto& a : j.at("angles")) c.angles.push_back(parse_angle(a));
  if (c.angles.empty()) throw FormatError("config: angles must be nonempty");
  long long K = get<long long>(j, "K", where);
  if (K < 1) throw FormatError("config: K must be >= 1");
  c.K = static_cast<std::size_t>(K);
  if (j.contains("verify")) c.verify = verify_options_from_json(j.at("verify"));
  if (j.contains("output")) {
    expect_keys(j.at("output"), {"dir"}, "output");
    get_if(j.at("output"), "dir", c.out_dir, "output");
  }
  get_if(j, "magnitude_cap", c.magnitude_cap, where);
  require_positive(c.magnitude_cap, "magnitude_cap");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  try {
    return parse_config(json::parse(is));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace uec
