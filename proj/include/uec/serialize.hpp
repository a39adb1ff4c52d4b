#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "uec/gauge.hpp"
#include "uec/rcurve.hpp"
#include "uec/scheduler.hpp"

namespace uec {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws FormatError naming the first key of obj not listed in allowed.
void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where);

json gauge_to_json(const GrowthGauge& g);
GrowthGauge gauge_from_json(const json& j);

/// A curve as a list of n+1 coefficient lists (ascending, Gaussian-rational text).
json curve_to_json(const RationalCurve& c);
RationalCurve curve_from_json(const json& j);

json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

void save_schedule(const Schedule& s, const std::filesystem::path& path);
Schedule load_schedule(const std::filesystem::path& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace uec
