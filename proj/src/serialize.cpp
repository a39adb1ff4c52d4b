#include "uec/serialize.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace uec {

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw FormatError(where + ": unknown key '" + key + "'");
  }
}

namespace {

template <class T>
T require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError(where + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

json gauge_to_json(const GrowthGauge& g) {
  json j;
  j["kind"] = GrowthGauge::kind_name(g.kind());
  switch (g.kind()) {
    case GrowthGauge::Kind::ScaledLog:
    case GrowthGauge::Kind::IteratedLog:
      j["c"] = g.c();
      j["b"] = g.b();
      break;
    case GrowthGauge::Kind::Power:
      j["c"] = g.c();
      j["alpha"] = g.alpha();
      j["b"] = g.b();
      break;
    case GrowthGauge::Kind::Samples: {
      json pts = json::array();
      for (const auto& [r, v] : g.points()) pts.push_back({r, v});
      j["points"] = pts;
      break;
    }
  }
  return j;
}

GrowthGauge gauge_from_json(const json& j) {
  const std::string where = "gauge";
  auto kind = GrowthGauge::kind_from_name(require<std::string>(j, "kind", where));
  switch (kind) {
    case GrowthGauge::Kind::ScaledLog:
      expect_keys(j, {"kind", "c", "b"}, where);
      return GrowthGauge::scaled_log(require<double>(j, "c", where), require<double>(j, "b", where));
    case GrowthGauge::Kind::IteratedLog:
      expect_keys(j, {"kind", "c", "b"}, where);
      return GrowthGauge::iterated_log(require<double>(j, "c", where), require<double>(j, "b", where));
    case GrowthGauge::Kind::Power:
      expect_keys(j, {"kind", "c", "alpha", "b"}, where);
      return GrowthGauge::power(require<double>(j, "c", where), require<double>(j, "alpha", where),
                                j.contains("b") ? require<double>(j, "b", where) : 0.0);
    case GrowthGauge::Kind::Samples: {
      expect_keys(j, {"kind", "points"}, where);
      auto pts = require<std::vector<std::pair<double, double>>>(j, "points", where);
      return GrowthGauge::samples(std::move(pts));
    }
  }
  throw FormatError("gauge: unreachable kind");
}

json curve_to_json(const RationalCurve& c) {
  json j = json::array();
  for (const auto& p : c.polys()) j.push_back(format_gpoly(p));
  return j;
}

RationalCurve curve_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("curve: expected a list of coefficient lists");
  std::vector<GPoly> polys;
  for (const auto& p : j) {
    try {
      polys.push_back(parse_gpoly(p.get<std::vector<std::string>>()));
    } catch (const json::exception& e) {
      throw FormatError(std::string("curve: coefficients must be strings: ") + e.what());
    }
  }
  return RationalCurve(std::move(polys));
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["format"] = "uec-schedule";
  j["version"] = 1;
  j["n"] = s.n;
  j["gauge"] = gauge_to_json(s.gauge);
  j["r0"] = s.r0;
  j["eps0"] = s.eps0;
  j["magnitude_cap"] = s.magnitude_cap;
  json blocks = json::array();
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const Block& b = s.blocks[i];
    json jb;
    jb["k"] = i + 1;
    jb["curve"] = curve_to_json(b.curve);
    jb["rep"] = b.rep;
    jb["angle"] = b.angle;
    jb["cert"] = {{"delta", b.cert.delta}, {"C", b.cert.C}, {"k", b.cert.k}, {"R", b.cert.R}};
    jb["n_poles"] = b.n_poles;
    jb["modulus"] = b.modulus ? json(*b.modulus) : json(nullptr);
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  return j;
}

Schedule schedule_from_json(const json& j) {
  const std::string where = "schedule";
  expect_keys(j, {"format", "version", "n", "gauge", "r0", "eps0", "magnitude_cap", "blocks"}, where);
  if (require<std::string>(j, "format", where) != "uec-schedule") throw FormatError("schedule: wrong format tag");
  if (require<int>(j, "version", where) != 1) throw FormatError("schedule: unsupported version");
  Schedule s;
  s.n = require<int>(j, "n", where);
  s.gauge = gauge_from_json(j.at("gauge"));
  s.r0 = require<double>(j, "r0", where);
  s.eps0 = require<double>(j, "eps0", where);
  s.magnitude_cap = require<double>(j, "magnitude_cap", where);
  const json& blocks = j.at("blocks");
  if (!blocks.is_array()) throw FormatError("schedule: blocks must be a list");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const json& jb = blocks[i];
    const std::string bw = "block " + std::to_string(i + 1);
    expect_keys(jb, {"k", "curve", "rep", "angle", "cert", "n_poles", "modulus"}, bw);
    if (require<std::size_t>(jb, "k", bw) != i + 1) throw FormatError(bw + ": blocks out of order");
    const json& jc = jb.at("cert");
    expect_keys(jc, {"delta", "C", "k", "R"}, bw + " cert");
    DecayCertificate cert{require<double>(jc, "delta", bw), require<double>(jc, "C", bw), require<int>(jc, "k", bw),
                          require<double>(jc, "R", bw)};
    if (cert.R != cert.delta + std::ldexp(cert.C, cert.k)) throw FormatError(bw + ": R != delta + 2^k C");
    Block b{curve_from_json(jb.at("curve")), require<std::size_t>(jb, "rep", bw), require<double>(jb, "angle", bw),
            cert, require<std::size_t>(jb, "n_poles", bw), std::nullopt};
    if (b.curve.dimension() != s.n) throw FormatError(bw + ": dimension mismatch");
    if (!jb.at("modulus").is_null()) b.modulus = require<double>(jb, "modulus", bw);
    s.blocks.push_back(std::move(b));
  }
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void save_schedule(const Schedule& s, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << dump(schedule_to_json(s));
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return schedule_from_json(j);
}

}  // namespace uec
