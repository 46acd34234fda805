#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tumorbim/csv.hpp"
#include "tumorbim/errors.hpp"
#include "tumorbim/scenario.hpp"

namespace fs = std::filesystem;
namespace sc = tumorbim::scenario;
using tumorbim::ConfigError;

namespace {

enum Exit { kOk = 0, kConfig = 2, kTruncated = 3, kInternal = 4 };

// "2..6" or "2,4,6"
std::vector<int> parse_modes(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      for (int l = lo; l <= hi; ++l) out.push_back(l);
    } else {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        out.push_back(std::stoi(text.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw ConfigError("modes", "expected a range like 2..6 or a list like 2,4");
  }
  if (out.empty()) throw ConfigError("modes", "empty");
  return out;
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  try {
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      out.push_back(std::stod(text.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::exception&) {
    throw ConfigError("levels", "expected a comma separated list of numbers");
  }
  return out;
}

int report(const sc::RunResult& r) {
  std::printf("status=%s steps=%ld t=%s\n", r.status == sc::RunStatus::completed ? "completed" : "truncated", r.steps,
              tumorbim::csv::format(r.t).c_str());
  if (r.status != sc::RunStatus::completed) {
    std::fprintf(stderr, "run truncated: %s\n", r.reason.c_str());
    return kTruncated;
  }
  return kOk;
}

int simulate(const std::string& config, const fs::path& out) {
  const auto spec = sc::parse_config(config);
  return report(sc::run_simulation(spec, out));
}

int linear(const std::string& config, int mode, const fs::path& out) {
  const auto spec = sc::parse_config(config);
  const auto cmp = sc::linear_compare(spec, mode, out);
  return report(cmp.run);
}

int stability(const std::string& config, const std::string& modes, double rmax, int points, const fs::path& out) {
  const auto spec = sc::parse_config(config);
  const auto rows = sc::stability_curves(spec, parse_modes(modes), rmax, points);
  fs::create_directories(out);
  tumorbim::csv::Writer w(out / "stability.csv", {"l", "R", "A_c"});
  for (const auto& r : rows) w.row({static_cast<double>(r.l), r.R, r.A_c});
  return kOk;
}

int converge(const std::string& config, const std::string& mode, const std::string& levels, const fs::path& out) {
  const auto spec = sc::parse_config(config);
  sc::ConvergenceMode m;
  if (mode == "temporal") {
    m = sc::ConvergenceMode::temporal;
  } else if (mode == "spatial") {
    m = sc::ConvergenceMode::spatial;
  } else {
    throw ConfigError("mode", "expected temporal or spatial");
  }
  const auto table = sc::convergence_study(spec, m, parse_levels(levels));
  fs::create_directories(out);
  std::ofstream f(out / "convergence.csv");
  f << "level,error,ratio,status\n";
  for (const auto& r : table.rows) {
    f << tumorbim::csv::format(r.level) << ',' << tumorbim::csv::format(r.error) << ','
      << tumorbim::csv::format(r.ratio) << ',' << '"' << r.status << '"' << '\n';
  }
  nlohmann::json summary;
  summary["mode"] = mode;
  summary["reference_level"] = table.reference_level;
  summary["fitted_order"] = table.fitted_order ? nlohmann::json(*table.fitted_order) : nlohmann::json(nullptr);
  summary["warnings"] = table.warnings;
  std::ofstream(out / "convergence.json") << summary.dump(2) << '\n';
  for (const auto& w : table.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  bool truncated = false;
  for (const auto& r : table.rows) {
    std::printf("%s %s %s %s\n", tumorbim::csv::format(r.level).c_str(), tumorbim::csv::format(r.error).c_str(),
                tumorbim::csv::format(r.ratio).c_str(), r.status.c_str());
    truncated = truncated || r.status != "ok";
  }
  if (table.fitted_order) std::printf("fitted order %.4f\n", *table.fitted_order);
  return truncated ? kTruncated : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary integral simulation of avascular tumor growth"};
  app.require_subcommand(1);

  std::string config, out = "out", modes = "2..6", conv_mode, levels;
  int mode = 2, points = 200;
  double rmax = 0.0;

  auto* sim = app.add_subcommand("simulate", "evolve the interface and write snapshots and diagnostics");
  sim->add_option("--config", config)->required();
  sim->add_option("--out", out);

  auto* lin = app.add_subcommand("linear", "compare a nonlinear run with the linear mode ODE");
  lin->add_option("--config", config)->required();
  lin->add_option("--mode", mode)->required();
  lin->add_option("--out", out);

  auto* stab = app.add_subcommand("stability", "critical apoptosis A_c(R) per mode");
  stab->add_option("--config", config)->required();
  stab->add_option("--modes", modes);
  stab->add_option("--rmax", rmax)->required();
  stab->add_option("--points", points);
  stab->add_option("--out", out);

  auto* conv = app.add_subcommand("converge", "temporal or spatial refinement study");
  conv->add_option("--config", config)->required();
  conv->add_option("--mode", conv_mode)->required();
  conv->add_option("--levels", levels)->required();
  conv->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*sim) return simulate(config, out);
    if (*lin) return linear(config, mode, out);
    if (*stab) return stability(config, modes, rmax, points, out);
    if (*conv) return converge(config, conv_mode, levels, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const tumorbim::GeometryError& e) {
    // raised while building the configured shapes
    std::fprintf(stderr, "config error [geometry]: %s\n", e.what());
    return kConfig;
  } catch (const tumorbim::ConvergenceError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kTruncated;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
