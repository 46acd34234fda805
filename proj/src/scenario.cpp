#include "tumorbim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tumorbim/csv.hpp"
#include "tumorbim/errors.hpp"

namespace tumorbim::scenario {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

// Reads fields of one JSON object and rejects anything it did not ask for.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }
  ~Fields() = default;

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(name(key), "missing");
    }
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(name(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(name(key), "must be finite");
    return d;
  }

  long integer(const std::string& key, std::optional<long> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(name(key), "missing");
    }
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(name(key), "expected an integer");
    return v.get<long>();
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (fallback) return *fallback;
      throw ConfigError(name(key), "missing");
    }
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(name(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!j_.contains(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(name(key), "expected true or false");
    return v.get<bool>();
  }

  const json* object(const std::string& key, bool required) {
    seen_.insert(key);
    if (!j_.contains(key)) {
      if (required) throw ConfigError(name(key), "missing");
      return nullptr;
    }
    return &j_.at(key);
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(name(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double positive(Fields& f, const std::string& key, std::optional<double> fallback = std::nullopt) {
  const double v = f.number(key, fallback);
  if (!(v > 0.0)) throw ConfigError(f.name(key), "must be positive");
  return v;
}

std::size_t power_of_two(Fields& f, const std::string& key, std::optional<long> fallback = std::nullopt) {
  const long v = f.integer(key, fallback);
  if (v < 8 || (v & (v - 1)) != 0) throw ConfigError(f.name(key), "must be a power of two >= 8");
  return static_cast<std::size_t>(v);
}

TumorShape parse_tumor(const json& j) {
  Fields f(j, "initial_shape");
  const std::string type = f.text("type");
  TumorShape out;
  if (type == "perturbed_circle") {
    PerturbedCircle s;
    s.R0 = positive(f, "R0");
    s.delta0 = f.number("delta0");
    s.mode = static_cast<int>(f.integer("l"));
    if (s.mode < 1) throw ConfigError("initial_shape.l", "must be >= 1");
    if (std::abs(s.delta0) >= s.R0) throw ConfigError("initial_shape.delta0", "must satisfy |delta0| < R0");
    out = s;
  } else if (type == "ellipse") {
    out = Ellipse{positive(f, "a"), positive(f, "b")};
  } else if (type == "circle") {
    out = Circle{positive(f, "R0")};
  } else {
    throw ConfigError("initial_shape.type", "expected perturbed_circle, ellipse or circle");
  }
  f.finish();
  return out;
}

FarFieldShape parse_farfield(const json& j) {
  Fields f(j, "farfield_shape");
  const std::string type = f.text("type");
  FarFieldShape out;
  if (type == "circle") {
    out = Circle{positive(f, "R_inf")};
  } else if (type == "cosine") {
    CosineFarField s;
    s.R_inf = positive(f, "R_inf");
    s.amp = f.number("amp");
    s.k = static_cast<int>(f.integer("k"));
    s.phase = f.number("phase", 0.0);
    out = s;
  } else if (type == "composite") {
    CompositeFarField s;
    s.R_inf = positive(f, "R_inf");
    s.amp = f.number("amp");
    const json* terms = f.object("terms", true);
    if (!terms->is_array() || terms->empty()) throw ConfigError("farfield_shape.terms", "expected a non-empty array");
    for (std::size_t i = 0; i < terms->size(); ++i) {
      Fields t((*terms)[i], "farfield_shape.terms[" + std::to_string(i) + "]");
      CompositeTerm term;
      const std::string fn = t.text("fn");
      if (fn != "cos" && fn != "sin") throw ConfigError(t.name("fn"), "expected cos or sin");
      term.sine = fn == "sin";
      term.power = static_cast<int>(t.integer("power", 1));
      term.k = static_cast<int>(t.integer("k"));
      if (term.power < 1) throw ConfigError(t.name("power"), "must be >= 1");
      t.finish();
      s.terms.push_back(term);
    }
    out = s;
  } else {
    throw ConfigError("farfield_shape.type", "expected circle, cosine or composite");
  }
  f.finish();
  return out;
}

SimulationSpec parse_json(const json& root) {
  Fields f(root, "");
  SimulationSpec s;
  const long version = f.integer("schema_version");
  if (version != kSchemaVersion) throw ConfigError("schema_version", "unsupported version " + std::to_string(version));

  {
    Fields p(*f.object("params", true), "params");
    s.params.D = p.number("D");
    s.params.lambda = p.number("lambda");
    s.params.P = p.number("P", 0.0);
    s.params.A = p.number("A", 0.0);
    s.params.chi = p.number("chi", 0.0);
    s.params.Ginv = p.number("Ginv", 0.0);
    p.finish();
    s.params.validate();
  }
  s.N = power_of_two(f, "N");
  s.N_inf = f.has("N_inf") ? power_of_two(f, "N_inf") : 0;
  s.dt = positive(f, "dt");
  s.t_end = f.number("t_end");
  if (s.t_end < 0.0) throw ConfigError("t_end", "must be non-negative");
  s.initial_shape = parse_tumor(*f.object("initial_shape", true));
  s.farfield_shape = parse_farfield(*f.object("farfield_shape", true));

  if (const json* j = f.object("solver", false)) {
    Fields o(*j, "solver");
    s.solver.tol = positive(o, "tol", 1e-10);
    s.solver.method = linear_solve::parse_method(o.text("method", "gmres"));
    s.solver.max_iterations = static_cast<int>(o.integer("max_iterations", 500));
    if (s.solver.max_iterations < 1) throw ConfigError("solver.max_iterations", "must be >= 1");
    o.finish();
  }
  if (const json* j = f.object("evolution", false)) {
    Fields e(*j, "evolution");
    s.evolution.filter_order = static_cast<int>(e.integer("filter_order", 25));
    s.evolution.filter_strength = e.number("filter_strength", 10.0);
    s.evolution.krasny_threshold = e.number("krasny_threshold", 1e-12);
    s.evolution.stiff_scale = e.number("stiff_scale", 1.0);
    s.evolution.integrating_factor = e.boolean("integrating_factor", true);
    if (s.evolution.filter_strength < 0.0) throw ConfigError("evolution.filter_strength", "must be >= 0");
    if (s.evolution.krasny_threshold < 0.0) throw ConfigError("evolution.krasny_threshold", "must be >= 0");
    if (s.evolution.stiff_scale < 0.0) throw ConfigError("evolution.stiff_scale", "must be >= 0");
    e.finish();
  }
  if (const json* j = f.object("output", false)) {
    Fields o(*j, "output");
    s.snapshot_every = o.integer("snapshot_every", 100);
    if (s.snapshot_every < 1) throw ConfigError("output.snapshot_every", "must be >= 1");
    o.finish();
  }
  f.finish();

  check_containment(build_initial_tumor(s.initial_shape, s.N), build_far_field(s.farfield_shape, s.far_markers()));
  return s;
}

}  // namespace

SimulationSpec parse_config_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_json(root);
}

SimulationSpec parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

namespace {

template <class F>
MarkerCurve polar_checked(std::size_t n, F&& radius, const char* what) {
  // polar curves with r > 0 everywhere are simple; check on a fine grid
  const std::size_t fine = 8 * n;
  for (std::size_t j = 0; j < fine; ++j) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(fine);
    if (!(radius(phi) > 0.0)) throw GeometryError(std::string(what) + ": polar radius is not positive everywhere");
  }
  return curve::polar(n, radius);
}

}  // namespace

// The far field stays in its polar parametrization. It never moves, the quadrature
// does not need equal spacing, and x(phi), y(phi) are trigonometric polynomials,
// whereas the equal-arclength version of a steep boundary needs far more markers.
MarkerCurve build_far_field(const FarFieldShape& shape, std::size_t n) {
  return std::visit(
      [n](const auto& s) -> MarkerCurve {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          if (!(s.R > 0.0)) throw GeometryError("far field: radius must be positive");
          return curve::circle(n, s.R);
        } else if constexpr (std::is_same_v<T, CosineFarField>) {
          return polar_checked(
              n, [s](double t) { return s.R_inf + s.amp * std::cos(s.k * t - s.phase); }, "far field");
        } else {
          return polar_checked(
              n,
              [s](double t) {
                double sum = 0.0;
                for (const auto& term : s.terms) {
                  const double v = term.sine ? std::sin(term.k * t) : std::cos(term.k * t);
                  sum += std::pow(v, term.power);
                }
                return s.R_inf + s.amp * sum;
              },
              "far field");
        }
      },
      shape);
}

MarkerCurve build_initial_tumor(const TumorShape& shape, std::size_t n) {
  return std::visit(
      [n](const auto& s) -> MarkerCurve {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return curve::circle(n, s.R);
        } else if constexpr (std::is_same_v<T, PerturbedCircle>) {
          return curve::equal_arclength_reparametrize(polar_checked(
              n, [s](double t) { return s.R0 + s.delta0 * std::cos(s.mode * t); }, "initial tumor"));
        } else {
          MarkerCurve c{std::vector<double>(n), std::vector<double>(n)};
          for (std::size_t j = 0; j < n; ++j) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            c.x[j] = s.a * std::cos(a);
            c.y[j] = s.b * std::sin(a);
          }
          return curve::equal_arclength_reparametrize(c);
        }
      },
      shape);
}

void check_containment(const MarkerCurve& tumor, const MarkerCurve& farfield) {
  for (std::size_t j = 0; j < tumor.size(); ++j) {
    if (!curve::contains(farfield, {tumor.x[j], tumor.y[j]})) {
      throw GeometryError("tumor marker " + std::to_string(j) + " is not inside the far-field boundary");
    }
  }
  for (std::size_t j = 0; j < farfield.size(); ++j) {
    if (curve::contains(tumor, {farfield.x[j], farfield.y[j]})) {
      throw GeometryError("far-field marker " + std::to_string(j) + " lies inside the tumor");
    }
  }
}

DiagnosticsRow diagnose(double t, const MarkerCurve& c, const BoundaryFields& f) {
  const auto al = curve::area_and_length(c);
  const double r_eff = std::sqrt(al.area / std::numbers::pi);
  double sf = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) sf = std::max(sf, std::abs(std::hypot(c.x[j], c.y[j]) / r_eff - 1.0));
  const auto [mn, mx] = std::minmax_element(f.sigma.begin(), f.sigma.end());
  return {t, r_eff, sf, al.area, al.length, *mn, *mx, f.iterations};
}

namespace {

std::string numbered(const std::string& stem, long k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06ld.csv", stem.c_str(), k);
  return buf;
}

class Output {
 public:
  explicit Output(const fs::path& dir) : dir_(dir) {
    if (dir_.empty()) return;
    fs::create_directories(dir_ / "snapshots");
    fs::create_directories(dir_ / "farfield");
    diag_.emplace(dir_ / "diagnostics.csv",
                  std::vector<std::string>{"t", "R_eff", "shape_factor", "area", "arclength", "min_sigma", "max_sigma",
                                           "solver_iterations"});
  }

  void diagnostics(const DiagnosticsRow& r) {
    if (!diag_) return;
    diag_->row({r.t, r.R_eff, r.shape_factor, r.area, r.arclength, r.min_sigma, r.max_sigma,
                static_cast<double>(r.solver_iterations)});
    diag_->flush();
  }

  void snapshot(long step, const kernels::Boundary& tumor, const kernels::Boundary& far, const BoundaryFields& f) {
    if (dir_.empty()) return;
    const std::size_t n = tumor.size();
    std::vector<double> alpha(n);
    for (std::size_t j = 0; j < n; ++j) alpha[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    csv::write_columns(dir_ / "snapshots" / numbered("snapshot", step),
                       {"alpha", "x", "y", "sigma", "dsigma_dn", "eta", "dp_dn", "V", "kappa"},
                       {&alpha, &tumor.curve.x, &tumor.curve.y, &f.sigma, &f.dsigma_dn, &f.eta, &f.dp_dn, &f.V,
                        &tumor.geom.kappa});
    const std::size_t m = far.size();
    std::vector<double> beta(m);
    for (std::size_t j = 0; j < m; ++j) beta[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    csv::write_columns(dir_ / "farfield" / numbered("farflux", step), {"alpha", "dsigma2_dn_inf"},
                       {&beta, &f.far_flux});
  }

  void status(const RunResult& r, const SimulationSpec& spec) {
    if (dir_.empty()) return;
    json j;
    j["status"] = r.status == RunStatus::completed ? "completed" : "truncated";
    j["reason"] = r.reason;
    j["steps"] = r.steps;
    j["t"] = r.t;
    j["t_end"] = spec.t_end;
    j["dt"] = spec.dt;
    j["N"] = spec.N;
    j["N_inf"] = spec.far_markers();
    std::ofstream(dir_ / "status.json") << j.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::optional<csv::Writer> diag_;
};

}  // namespace

RunResult run_simulation(const SimulationSpec& spec, const fs::path& out_dir) {
  RunResult result;
  Output out(out_dir);
  const MarkerCurve far_curve = build_far_field(spec.farfield_shape, spec.far_markers());
  const MarkerCurve tumor0 = build_initial_tumor(spec.initial_shape, spec.N);
  check_containment(tumor0, far_curve);
  FieldSolver solver(far_curve, spec.params, spec.solver);

  auto state = evolution::initial_state(tumor0);
  const long total = std::lround(std::ceil(spec.t_end / spec.dt - 1e-9));

  // Fields of the curve the last velocity evaluation saw; recorded per step.
  BoundaryFields fields;
  std::optional<kernels::Boundary> current;
  long step = 0;
  auto velocity = [&](const MarkerCurve& c) {
    check_containment(c, far_curve);
    current.emplace(c);
    fields = solver.solve(*current);
    const double t = static_cast<double>(step) * spec.dt;
    const auto row = diagnose(t, c, fields);
    result.diagnostics.push_back(row);
    out.diagnostics(row);
    if (step % spec.snapshot_every == 0) out.snapshot(step, *current, solver.farfield(), fields);
    return fields.V;
  };

  try {
    for (; step < total; ++step) {
      const double dt = std::min(spec.dt, spec.t_end - static_cast<double>(step) * spec.dt);
      evolution::step(state, dt, velocity, spec.evolution);
    }
    // final state: one more field solve so the last snapshot and row describe t_end
    velocity(evolution::curve_of(state));
    if (total % spec.snapshot_every != 0) out.snapshot(step, *current, solver.farfield(), fields);
    result.final_curve = current->curve;
    result.final_fields = fields;
  } catch (const ConvergenceError& e) {
    result.status = RunStatus::truncated;
    result.reason = e.what();
  } catch (const InstabilityError& e) {
    result.status = RunStatus::truncated;
    result.reason = e.what();
  } catch (const DegenerateCurveError& e) {
    result.status = RunStatus::truncated;
    result.reason = e.what();
  } catch (const GeometryError& e) {
    result.status = RunStatus::truncated;
    result.reason = e.what();
  }
  if (result.status == RunStatus::truncated) {
    // last completed state
    result.final_curve = evolution::curve_of(state);
    result.final_fields = fields;
  }
  result.steps = step;
  result.t = std::min(spec.t_end, static_cast<double>(step) * spec.dt);
  out.status(result, spec);
  return result;
}

double interface_difference(const MarkerCurve& a, const MarkerCurve& b) {
  const MarkerCurve* coarse = a.size() <= b.size() ? &a : &b;
  const MarkerCurve* fine = a.size() <= b.size() ? &b : &a;
  const auto x = spectral::resample(coarse->x, fine->size());
  const auto y = spectral::resample(coarse->y, fine->size());
  double d = 0.0;
  for (std::size_t j = 0; j < fine->size(); ++j) d = std::max(d, std::hypot(x[j] - fine->x[j], y[j] - fine->y[j]));
  return d;
}

ConvergenceTable convergence_study(const SimulationSpec& spec, ConvergenceMode mode, std::vector<double> levels) {
  ConvergenceTable table;
  if (levels.size() < 2) {
    table.warnings.push_back("need at least two levels; nothing to compare");
    return table;
  }
  const bool temporal = mode == ConvergenceMode::temporal;
  // finest last: smallest dt, largest N
  std::sort(levels.begin(), levels.end(), [temporal](double x, double y) { return temporal ? x > y : x < y; });
  auto spec_for = [&](double level) {
    SimulationSpec s = spec;
    if (temporal) {
      s.dt = level;
    } else {
      const auto n = static_cast<std::size_t>(std::llround(level));
      if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("levels", "spatial levels must be powers of two");
      s.N = n;
      // far field follows the tumor resolution unless pinned
      if (spec.N_inf == 0) s.N_inf = 0;
    }
    return s;
  };

  table.reference_level = levels.back();
  const RunResult ref = run_simulation(spec_for(levels.back()));
  if (ref.status != RunStatus::completed) {
    table.warnings.push_back("reference run truncated: " + ref.reason);
    return table;
  }
  double prev = std::nan("");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const RunResult r = run_simulation(spec_for(levels[i]));
    ConvergenceRow row{levels[i], std::nan(""), std::nan(""), "ok"};
    if (r.status != RunStatus::completed) {
      row.status = "truncated: " + r.reason;
      prev = std::nan("");
    } else {
      row.error = interface_difference(r.final_curve, ref.final_curve);
      row.ratio = prev / row.error;
      prev = row.error;
      if (temporal && row.error > 0.0) {
        lx.push_back(std::log(levels[i]));
        ly.push_back(std::log(row.error));
      }
    }
    table.rows.push_back(row);
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    table.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return table;
}

LinearCompare linear_compare(const SimulationSpec& spec, int l, const fs::path& out_dir) {
  const auto* pc = std::get_if<PerturbedCircle>(&spec.initial_shape);
  if (!pc) throw ConfigError("initial_shape", "linear comparison needs a perturbed_circle");
  if (pc->mode != l) throw ConfigError("initial_shape.l", "does not match the requested mode");
  const double r_inf = farfield_radius(spec);

  LinearCompare out;
  out.run = run_simulation(spec, out_dir.empty() ? fs::path() : out_dir / "run");
  const auto traj = linear_theory::integrate_linear_ode({pc->R0, pc->delta0, l, r_inf}, spec.params, spec.t_end, spec.dt);
  for (const auto& d : out.run.diagnostics) {
    const auto k = static_cast<std::size_t>(std::llround(d.t / spec.dt));
    if (k >= traj.points.size()) break;
    const auto& p = traj.points[k];
    out.rows.push_back({d.t, d.R_eff, p.R, d.shape_factor, p.delta / p.R});
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    csv::Writer w(out_dir / "linear_compare.csv",
                  {"t", "R_eff_nonlinear", "R_linear", "shapefactor_nonlinear", "delta_over_R_linear"});
    for (const auto& r : out.rows) w.row({r.t, r.R_eff_nonlinear, r.R_linear, r.shape_factor_nonlinear, r.delta_over_R_linear});
  }
  return out;
}

double farfield_radius(const SimulationSpec& spec) {
  const auto* c = std::get_if<Circle>(&spec.farfield_shape);
  if (!c) throw ConfigError("farfield_shape", "linear theory needs a circular far field");
  return c->R;
}

std::vector<StabilityRow> stability_curves(const SimulationSpec& spec, const std::vector<int>& modes, double rmax,
                                           int points) {
  const double r_inf = farfield_radius(spec);
  if (!(rmax > 0.0) || !(rmax < r_inf)) throw ConfigError("rmax", "must satisfy 0 < rmax < R_inf");
  std::vector<StabilityRow> rows;
  for (int l : modes) {
    if (l < 2) throw ConfigError("modes", "modes must be >= 2");
    for (int i = 1; i <= points; ++i) {
      const double R = rmax * i / points;
      rows.push_back({l, R, linear_theory::critical_apoptosis(R, spec.params, l, r_inf)});
    }
  }
  return rows;
}

}  // namespace tumorbim::scenario
