#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uec/gauge.hpp"
#include "uec/rcurve.hpp"
#include "uec/runge.hpp"
#include "uec/serialize.hpp"

namespace uec {

struct RungeTarget {
  std::string name;
  EntireCurveSpec spec;
  double N = 1.0;
  double eps = 0.1;
};

struct EnumerateSpec {
  int max_deg = 1;
  int max_height = 1;
  std::size_t limit = 0;  // keep the first `limit` curves (0 = all)
  std::size_t count_cap = 100000;
};

struct VerifyOptions {
  std::size_t growth_points = 200;
  double growth_span = 2.0;  // grid runs over [1, span * |a_K|]
  std::size_t outside_samples = 1000;
  int disc_grid = 17;
  double universality_N = 2.0;
  double universality_eps = 0.1;
  int universality_grid = 41;
  std::size_t fmt_radii = 10;
  double fmt_tol = 1e-2;
  bool enable_area = false;
  double quad_tol = 1e-11;
  int quad_depth = 14;
  double lemma_slack = 1e-6;
  double monotone_slack = 1e-6;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct RunConfig {
  int n = 1;
  GrowthGauge gauge;
  std::vector<RationalCurve> curves;
  std::vector<RungeTarget> runge;
  std::optional<EnumerateSpec> enumerate;
  std::vector<double> angles;
  std::size_t K = 1;
  VerifyOptions verify;
  std::string out_dir = "out";
  double magnitude_cap = 9007199254740992.0;
};

/// Accepts numbers or strings such as "0", "pi", "pi/2", "3*pi/4", "0.25".
double parse_angle(const json& j);

/// {"kind": "constant"|"polynomial"|"exp"|"sin"|"cos", ...}; complex
/// parameters are numbers or Gaussian-rational strings.
EntireComponent component_from_json(const json& j);
RungeTarget runge_target_from_json(const json& j);
VerifyOptions verify_options_from_json(const json& j);

RunConfig parse_config(const json& j);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace uec
