#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "tumorbim/errors.hpp"
#include "tumorbim/scenario.hpp"

using namespace tumorbim;
namespace sc = tumorbim::scenario;
namespace fs = std::filesystem;

namespace {
constexpr double kPi = std::numbers::pi;

const char* kFig5 = R"({
  "schema_version": 1,
  "params": {"D": 1, "lambda": 0.01, "chi": 5, "P": 0.5, "A": 0, "Ginv": 0.001},
  "N": 512, "dt": 0.005, "t_end": 40,
  "initial_shape": {"type": "perturbed_circle", "R0": 2.0, "delta0": 0.1, "l": 2},
  "farfield_shape": {"type": "cosine", "R_inf": 13, "amp": 2, "k": 5, "phase": 1.5707963267948966}
})";

std::string small(const std::string& params, const std::string& shape, double t_end, const std::string& extra = "") {
  return R"({"schema_version": 1, "params": )" + params + R"(, "N": 32, "dt": 0.01, "t_end": )" +
         std::to_string(t_end) + R"(, "initial_shape": )" + shape +
         R"(, "farfield_shape": {"type": "circle", "R_inf": 13})" + extra + "}";
}

std::string config_field(const std::string& text) {
  try {
    sc::parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("tumorbim_test_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("the finger configuration is accepted") {
  const auto s = sc::parse_config_string(kFig5);
  CHECK(s.N == 512);
  CHECK(s.far_markers() == 512);
  CHECK(s.params.chi == 5.0);
  CHECK(s.snapshot_every == 100);
  CHECK(s.solver.tol == 1e-10);
  const auto& cf = std::get<sc::CosineFarField>(s.farfield_shape);
  CHECK(cf.k == 5);
}

TEST_CASE("configuration errors name the field") {
  const std::string p = R"({"D": 1, "lambda": 0.01})";
  const std::string circ = R"({"type": "circle", "R0": 2})";
  CHECK(config_field(small(p, circ, 0.1)) == "<accepted>");
  CHECK(config_field(small(p, circ, 0.1, R"(, "N_inf": -64)")) == "N_inf");
  CHECK(config_field(small(p, circ, 0.1, R"(, "bogus": 1)")) == "bogus");
  CHECK(config_field(small(R"({"D": 1, "lambda": 0.01, "Pp": 1})", circ, 0.1)) == "params.Pp");
  CHECK(config_field(small(R"({"D": -1, "lambda": 0.01})", circ, 0.1)) == "params.D");
  CHECK(config_field(small(p, R"({"type": "square"})", 0.1)) == "initial_shape.type");
  CHECK(config_field(small(p, circ, 0.1, R"(, "solver": {"method": "cg"})")) == "solver.method");
  CHECK(config_field(R"({"schema_version": 2})") == "schema_version");
  CHECK(config_field("{not json") == "");
  std::string neg = kFig5;
  neg.replace(neg.find("512"), 3, "-512");
  CHECK(config_field(neg) == "N");
}

TEST_CASE("a tumor outside the far field is rejected") {
  const std::string bad = small(R"({"D": 1, "lambda": 0.01})", R"({"type": "circle", "R0": 14})", 0.1);
  CHECK_THROWS_AS(sc::parse_config_string(bad), GeometryError);
}

TEST_CASE("far-field builders") {
  const auto c = sc::build_far_field(sc::Circle{13.0}, 64);
  CHECK(curve::geometry_of(c).s_alpha == doctest::Approx(13.0).epsilon(1e-14));

  const auto f = sc::build_far_field(sc::CosineFarField{13.0, 2.0, 5, kPi / 2}, 256);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double th = std::atan2(f.y[j], f.x[j]);
    CHECK(std::hypot(f.x[j], f.y[j]) == doctest::Approx(13.0 + 2.0 * std::cos(5 * th - kPi / 2)).epsilon(1e-12));
  }
  // markers sit at equally spaced polar angles
  CHECK(std::atan2(f.y[3], f.x[3]) == doctest::Approx(2 * kPi * 3 / 256.0).epsilon(1e-14));

  CHECK_THROWS_AS(sc::build_far_field(sc::CosineFarField{1.0, 2.0, 3, 0.0}, 64), GeometryError);
}

TEST_CASE("initial tumor builders") {
  const auto p = sc::build_initial_tumor(sc::PerturbedCircle{2.0, 0.1, 2}, 64);
  const double th = std::atan2(p.y[5], p.x[5]);
  CHECK(std::hypot(p.x[5], p.y[5]) == doctest::Approx(2.0 + 0.1 * std::cos(2 * th)).epsilon(1e-12));
  const auto e = sc::build_initial_tumor(sc::Ellipse{2.1, 1.9}, 64);
  CHECK(curve::area_and_length(e).area == doctest::Approx(kPi * 2.1 * 1.9).epsilon(1e-12));
}

TEST_CASE("a circle without proliferation or apoptosis does not move") {
  auto s = sc::parse_config_string(
      small(R"({"D": 1, "lambda": 0.01, "chi": 3, "Ginv": 0.05})", R"({"type": "circle", "R0": 2})", 0.2));
  const auto r = sc::run_simulation(s);
  REQUIRE(r.status == sc::RunStatus::completed);
  CHECK(r.steps == 20);
  const auto c0 = sc::build_initial_tumor(s.initial_shape, s.N);
  double d = 0.0;
  for (std::size_t j = 0; j < c0.size(); ++j) d = std::max(d, std::hypot(r.final_curve.x[j] - c0.x[j], r.final_curve.y[j] - c0.y[j]));
  CHECK(d < 1e-10);
  CHECK(r.diagnostics.size() == 21);
}

TEST_CASE("outputs are complete, consistent and deterministic") {
  const auto text = small(R"({"D": 1, "lambda": 0.01, "chi": 5, "P": 0.5, "Ginv": 0.001})",
                          R"({"type": "perturbed_circle", "R0": 2, "delta0": 0.1, "l": 2})", 0.05,
                          R"(, "output": {"snapshot_every": 2})");
  const auto s = sc::parse_config_string(text);
  const auto a = scratch("a"), b = scratch("b");
  const auto ra = sc::run_simulation(s, a);
  sc::run_simulation(s, b);
  REQUIRE(ra.status == sc::RunStatus::completed);
  for (const char* f : {"diagnostics.csv", "status.json", "snapshots/snapshot_000000.csv", "snapshots/snapshot_000004.csv",
                        "snapshots/snapshot_000005.csv", "farfield/farflux_000002.csv"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "snapshots/snapshot_000000.csv").rfind("alpha,x,y,sigma,dsigma_dn,eta,dp_dn,V,kappa\n", 0) == 0);
  CHECK(slurp(a / "farfield/farflux_000000.csv").rfind("alpha,dsigma2_dn_inf\n", 0) == 0);
  CHECK(slurp(a / "status.json").find("\"completed\"") != std::string::npos);
  for (const auto& d : ra.diagnostics) {
    CHECK(d.R_eff * d.R_eff * kPi == doctest::Approx(d.area).epsilon(1e-12));
    CHECK(d.min_sigma <= d.max_sigma);
  }
  // arclength against the evolution state
  auto st = evolution::initial_state(ra.final_curve);
  CHECK(std::abs(ra.diagnostics.back().arclength - 2 * kPi * st.s_alpha) < 1e-10);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("solver failure truncates the run and records the status") {
  const auto text = small(R"({"D": 1, "lambda": 0.01, "P": 0.5})", R"({"type": "perturbed_circle", "R0": 2, "delta0": 0.1, "l": 2})",
                          0.05, R"(, "solver": {"tol": 1e-15, "max_iterations": 1})");
  const auto out = scratch("trunc");
  const auto r = sc::run_simulation(sc::parse_config_string(text), out);
  CHECK(r.status == sc::RunStatus::truncated);
  CHECK_FALSE(r.reason.empty());
  CHECK(slurp(out / "status.json").find("\"truncated\"") != std::string::npos);
  CHECK(fs::exists(out / "diagnostics.csv"));
  fs::remove_all(out);
}

TEST_CASE("convergence study with a single level") {
  const auto s = sc::parse_config_string(
      small(R"({"D": 1, "lambda": 0.01})", R"({"type": "circle", "R0": 2})", 0.02));
  const auto t = sc::convergence_study(s, sc::ConvergenceMode::temporal, {0.01});
  CHECK(t.rows.empty());
  CHECK(t.warnings.size() == 1);
  CHECK_FALSE(t.fitted_order);
}

TEST_CASE("interface difference of identical curves is zero and handles resolution") {
  auto r = [](double t) { return 2.0 + 0.1 * std::cos(2 * t); };
  const auto a = curve::equal_arclength_reparametrize(curve::polar(32, r));
  const auto b = curve::equal_arclength_reparametrize(curve::polar(128, r));
  // 32 markers resolve this curve to about 3e-10
  CHECK(sc::interface_difference(a, a) < 1e-15);
  CHECK(sc::interface_difference(a, b) < 1e-9);
  const auto c = curve::equal_arclength_reparametrize(
      curve::polar(128, [](double t) { return 2.0 + 0.1 * std::cos(2 * t) + 1e-3 * std::cos(5 * t); }));
  CHECK(sc::interface_difference(b, c) == doctest::Approx(1e-3).epsilon(0.1));
}

TEST_CASE("linear comparison with no growth is constant") {
  const auto s = sc::parse_config_string(small(R"({"D": 1, "lambda": 0.01})",
                                              R"({"type": "perturbed_circle", "R0": 2, "delta0": 0.05, "l": 2})", 0.05));
  const auto cmp = sc::linear_compare(s, 2);
  REQUIRE(cmp.rows.size() == 6);
  for (const auto& row : cmp.rows) {
    CHECK(row.R_linear == doctest::Approx(2.0).epsilon(1e-14));
    // V = 0; only the splitting error of the time stepper moves the curve
    CHECK(row.R_eff_nonlinear == doctest::Approx(cmp.rows.front().R_eff_nonlinear).epsilon(1e-6));
    CHECK(row.delta_over_R_linear == doctest::Approx(0.025).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sc::linear_compare(s, 3), ConfigError);
}

TEST_CASE("stability curves") {
  const auto s = sc::parse_config_string(small(R"({"D": 1, "lambda": 0.01, "P": 1, "Ginv": 0.05})",
                                              R"({"type": "circle", "R0": 2})", 0.1));
  const auto rows = sc::stability_curves(s, {2, 3}, 12.0, 24);
  CHECK(rows.size() == 48);
  CHECK(rows.back().R == doctest::Approx(12.0));
  CHECK_THROWS_AS(sc::stability_curves(s, {2}, 14.0), ConfigError);
}
