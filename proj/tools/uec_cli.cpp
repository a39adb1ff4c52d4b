#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uec/commands.hpp"
#include "uec/csv.hpp"

namespace {

using cd = std::complex<double>;

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal entire curves of slow growth: schedules, evaluation and growth checks"};
  app.require_subcommand(1);

  std::string config_path, schedule_path, out, which = "all";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  bool enable_area = false;

  auto* sched = app.add_subcommand("schedule", "build and resolve a schedule from a config");
  sched->add_option("--config", config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
  sched->add_option("--out", out, "output directory (default: the config's output.dir)");

  auto* verify = app.add_subcommand("verify", "run verification suites on a schedule");
  verify->add_option("--schedule", schedule_path, "schedule file")->required()->check(CLI::ExistingFile);
  verify->add_option("--which", which, "growth, separation, approx, fmt-consistency or all")
      ->check(CLI::IsMember({"growth", "separation", "approx", "fmt-consistency", "all"}));
  verify->add_option("--config", config_path, "config supplying verify options")->check(CLI::ExistingFile);
  verify->add_option("--out", out, "directory for the JSON report and CSV tables");
  verify->add_option("--seed", seed, "seed for randomized samples");
  verify->add_option("--jobs", jobs, "worker threads for the growth sweep");
  verify->add_flag("--enable-area", enable_area, "also compute the area-integral characteristic");

  std::vector<std::string> points;
  std::string grid;
  auto* eval = app.add_subcommand("eval", "evaluate |h_j| at points");
  eval->add_option("--schedule", schedule_path, "schedule file")->required()->check(CLI::ExistingFile);
  eval->add_option("--point", points, "re,im (repeatable)");
  eval->add_option("--grid", grid, "cx,cy,radius,side: square grid clipped to the disc");
  eval->add_option("--out", out, "CSV path (default stdout)");

  double r_min = 1.0, r_max = 0.0;
  std::size_t count = 200;
  auto* sweep = app.add_subcommand("sweep", "growth table over a log-spaced radius grid");
  sweep->add_option("--schedule", schedule_path, "schedule file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--r-min", r_min, "smallest radius (>= 1)");
  sweep->add_option("--r-max", r_max, "largest radius (default 2 |a_K|)");
  sweep->add_option("--count", count, "number of radii");
  sweep->add_option("--out", out, "CSV path (default stdout)");
  sweep->add_option("--jobs", jobs, "worker threads");
  sweep->add_flag("--enable-area", enable_area, "also compute the area-integral characteristic");

  auto* fit = app.add_subcommand("runge-fit", "rationalize the config's entire targets");
  fit->add_option("--config", config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
  fit->add_option("--out", out, "text output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sched->parsed()) {
      auto cfg = uec::load_config(config_path);
      auto res = uec::cmd_schedule(cfg, out.empty() ? cfg.out_dir : out);
      std::cout << res.summary;
      return 0;
    }
    if (verify->parsed()) {
      uec::VerifyOptions opt;
      if (!config_path.empty()) opt = uec::load_config(config_path).verify;
      if (seed) opt.seed = *seed;
      if (jobs) opt.jobs = *jobs;
      if (enable_area) opt.enable_area = true;
      auto res = uec::cmd_verify(uec::load_schedule(schedule_path), which, opt, out);
      std::cout << uec::dump(res.report);
      return res.pass ? 0 : 1;
    }
    if (eval->parsed()) {
      std::vector<cd> zs;
      for (const auto& p : points) {
        auto v = split_numbers(p);
        if (v.size() != 2) throw std::invalid_argument("--point expects re,im");
        zs.emplace_back(v[0], v[1]);
      }
      if (!grid.empty()) {
        auto v = split_numbers(grid);
        if (v.size() != 4) throw std::invalid_argument("--grid expects cx,cy,radius,side");
        auto g = uec::disc_grid_points(cd(v[0], v[1]), v[2], static_cast<int>(v[3]));
        zs.insert(zs.end(), g.begin(), g.end());
      }
      std::ostringstream csv;
      uec::cmd_eval(uec::load_schedule(schedule_path), zs, csv);
      emit(csv.str(), out);
      return 0;
    }
    if (sweep->parsed()) {
      auto s = uec::load_schedule(schedule_path);
      if (r_max <= 0.0) {
        r_max = 2.0 * std::exp(1.0);
        for (const auto& b : s.blocks) {
          if (b.modulus) r_max = std::max(r_max, 2.0 * *b.modulus);
        }
      }
      uec::GrowthOptions opt;
      opt.area = enable_area;
      if (jobs) opt.jobs = *jobs;
      std::ostringstream csv;
      auto rep = uec::cmd_sweep(s, r_min, r_max, count, opt, csv);
      emit(csv.str(), out);
      if (!rep.pass()) std::cerr << "FAIL: " << rep.first_failure << "\n";
      return rep.pass() ? 0 : 1;
    }
    if (fit->parsed()) {
      auto cfg = uec::load_config(config_path);
      if (cfg.runge.empty()) throw std::invalid_argument("config has no runge targets");
      std::string text;
      for (const auto& t : cfg.runge) text += uec::cmd_runge_fit(t);
      emit(text, out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
