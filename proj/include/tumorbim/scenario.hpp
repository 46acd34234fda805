#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tumorbim/evolution.hpp"
#include "tumorbim/field_solver.hpp"
#include "tumorbim/linear_theory.hpp"

namespace tumorbim::scenario {

// ---- shape descriptors ----

struct PerturbedCircle {
  double R0 = 2.0;
  double delta0 = 0.1;
  int mode = 2;
};
struct Ellipse {
  double a = 2.1;
  double b = 1.9;
};
struct Circle {
  double R = 13.0;
};
/// r = R_inf + amp cos(k theta - phase)
struct CosineFarField {
  double R_inf = 13.0;
  double amp = 2.0;
  int k = 5;
  double phase = 0.0;
};
/// r = R_inf + amp * sum_t fn_t(k_t theta)^power_t, fn in {cos, sin}
struct CompositeTerm {
  bool sine = false;
  int power = 1;
  int k = 1;
};
struct CompositeFarField {
  double R_inf = 13.0;
  double amp = 2.0;
  std::vector<CompositeTerm> terms;
};

using TumorShape = std::variant<PerturbedCircle, Ellipse, Circle>;
using FarFieldShape = std::variant<Circle, CosineFarField, CompositeFarField>;

struct SimulationSpec {
  ModelParams params;
  std::size_t N = 256;
  std::size_t N_inf = 0;  // 0: same as N
  double dt = 0.01;
  double t_end = 1.0;
  TumorShape initial_shape = PerturbedCircle{};
  FarFieldShape farfield_shape = Circle{};
  linear_solve::Options solver;
  evolution::Options evolution;
  long snapshot_every = 100;

  std::size_t far_markers() const { return N_inf ? N_inf : N; }
};

/// Reads and validates a JSON configuration. Unknown keys are rejected.
/// Throws ConfigError naming the offending field, GeometryError on non-containment.
SimulationSpec parse_config(const std::filesystem::path& path);
SimulationSpec parse_config_string(const std::string& json_text);

MarkerCurve build_far_field(const FarFieldShape& s, std::size_t n);
MarkerCurve build_initial_tumor(const TumorShape& s, std::size_t n);

/// Throws GeometryError unless the tumor lies strictly inside the far field.
void check_containment(const MarkerCurve& tumor, const MarkerCurve& farfield);

// ---- runs ----

struct DiagnosticsRow {
  double t, R_eff, shape_factor, area, arclength, min_sigma, max_sigma;
  int solver_iterations;
};

enum class RunStatus { completed, truncated };

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::string reason;
  long steps = 0;
  double t = 0.0;
  MarkerCurve final_curve;
  BoundaryFields final_fields;
  std::vector<DiagnosticsRow> diagnostics;
};

/// Steps from t = 0 to t_end. With a non-empty out_dir writes diagnostics.csv,
/// snapshots/snapshot_NNNNNN.csv, farfield/farflux_NNNNNN.csv and status.json.
/// Field-solve or geometry failures truncate the run (status = truncated).
RunResult run_simulation(const SimulationSpec& spec, const std::filesystem::path& out_dir = {});

DiagnosticsRow diagnose(double t, const MarkerCurve& c, const BoundaryFields& f);

// ---- harnesses ----

enum class ConvergenceMode { temporal, spatial };

struct ConvergenceRow {
  double level;        // dt or N
  double error;        // max interface difference against the reference
  double ratio;        // error of the previous (coarser) level / this error; NaN for the first
  std::string status;  // "ok" or the failure reason
};

struct ConvergenceTable {
  double reference_level = 0.0;
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_order;  // log-log least squares slope (temporal); absent for < 2 rows
  std::vector<std::string> warnings;
};

/// Levels are dt values (temporal) or N values (spatial). The finest level is the reference.
ConvergenceTable convergence_study(const SimulationSpec& spec, ConvergenceMode mode, std::vector<double> levels);

/// Max marker distance after trigonometric interpolation of the coarser curve to the finer grid.
double interface_difference(const MarkerCurve& a, const MarkerCurve& b);

struct LinearCompareRow {
  double t, R_eff_nonlinear, R_linear, shape_factor_nonlinear, delta_over_R_linear;
};

struct LinearCompare {
  RunResult run;
  std::vector<LinearCompareRow> rows;
};

LinearCompare linear_compare(const SimulationSpec& spec, int l, const std::filesystem::path& out_dir = {});

struct StabilityRow {
  int l;
  double R;
  double A_c;
};

/// A_c(R) for R in (0, rmax] on `points` uniform samples per mode. Needs a circular far field.
std::vector<StabilityRow> stability_curves(const SimulationSpec& spec, const std::vector<int>& modes, double rmax,
                                           int points = 200);

double farfield_radius(const SimulationSpec& spec);

}  // namespace tumorbim::scenario
