#pragma once

#include <complex>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "uec/config.hpp"
#include "uec/curve.hpp"
#include "uec/nevanlinna.hpp"
#include "uec/runge.hpp"
#include "uec/scheduler.hpp"

namespace uec {

/// Inline curves, then Runge outputs, then the enumerated slice.
std::vector<RationalCurve> assemble_dictionary(const RunConfig& cfg, std::vector<RungeResult>* runge_out = nullptr);

/// Per-block k, rep, angle, R_k, n_k, |a_k| and the margins of (i)-(iv).
std::string schedule_summary(const Schedule& s);

struct ScheduleOutcome {
  Schedule schedule;
  std::string summary;
};

/// Builds and resolves the schedule; writes schedule.json and summary.txt
/// into out_dir when it is nonempty. Errors name the block and inequality.
ScheduleOutcome cmd_schedule(const RunConfig& cfg, const std::filesystem::path& out_dir);

struct VerifyOutcome {
  json report;
  bool pass = false;
};

/// which: growth, separation, approx, fmt-consistency or all. Writes
/// verify_report.json plus CSV tables into out_dir when it is nonempty.
VerifyOutcome cmd_verify(const Schedule& s, const std::string& which, const VerifyOptions& opt,
                         const std::filesystem::path& out_dir);

void cmd_eval(const Schedule& s, const std::vector<std::complex<double>>& points, std::ostream& csv);

GrowthReport cmd_sweep(const Schedule& s, double r_lo, double r_hi, std::size_t count, const GrowthOptions& opt,
                       std::ostream& csv);

/// Human-readable description of the rationalized curve.
std::string cmd_runge_fit(const RungeTarget& t);

}  // namespace uec
