#include <cmath>
#include <numbers>

#include <doctest.h>

#include "tumorbim/errors.hpp"
#include "tumorbim/field_solver.hpp"
#include "tumorbim/linear_theory.hpp"
#include "tumorbim/specfun.hpp"

using namespace tumorbim;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_minus(const std::vector<double>& v, double c) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - c));
  return d;
}
}  // namespace

TEST_CASE("concentric circles reproduce the radial nutrient solution") {
  for (auto [D, lambda] : {std::pair{1.0, 0.01}, std::pair{100.0, 1.0}, std::pair{1.0, 1.0}}) {
    ModelParams p;
    p.D = D;
    p.lambda = lambda;
    FieldSolver fs(curve::circle(64, 13.0), p);
    const kernels::Boundary tumor(curve::circle(64, 2.0));
    const auto tr = fs.solve_nutrient(tumor);
    const auto ex = linear_theory::radial_traces(2.0, 13.0, p);
    CAPTURE(D);
    CAPTURE(lambda);
    CHECK(max_abs_minus(tr.sigma, ex.sigma) < 1e-9);
    CHECK(max_abs_minus(tr.dsigma_dn, ex.flux) < 1e-9);
    CHECK(max_abs_minus(tr.far_flux, ex.far_flux) < 1e-9);
  }
}

TEST_CASE("radial nutrient value against the direct Bessel formula") {
  // D = 1 makes the flux continuity trivial; check sigma = A1 I0(R) with the 3x3 solve
  ModelParams p;
  p.D = 1.0;
  p.lambda = 1.0;
  const auto c = linear_theory::radial_coefficients(2.0, 13.0, p);
  // sigma1 = sigma2 and equal fluxes at R; sigma2(R_inf) = 1
  const double s1 = c.A1 * specfun::bessel_i(0, 2.0);
  const double s2 = c.A2 * specfun::bessel_i(0, 2.0) + c.A3 * specfun::bessel_k(0, 2.0);
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-13));
  CHECK(c.A2 * specfun::bessel_i(0, 13.0) + c.A3 * specfun::bessel_k(0, 13.0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("full pipeline on a circle: uniform velocity") {
  ModelParams p;
  p.D = 1.0;
  p.lambda = 0.01;
  p.chi = 5.0;
  p.P = 0.5;
  p.A = 0.2;
  p.Ginv = 0.001;
  FieldSolver fs(curve::circle(64, 13.0), p);
  const kernels::Boundary tumor(curve::circle(64, 2.0));
  const auto f = fs.solve(tumor);
  const auto ex = linear_theory::radial_traces(2.0, 13.0, p);
  // pressure is constant along a circle, so V = P dsigma/dn - A R / 2
  CHECK(max_abs_minus(f.dp_dn, 0.0) < 1e-9);
  CHECK(max_abs_minus(f.V, p.P * ex.flux - p.A * 2.0 / 2.0) < 1e-9);
  const auto g = linear_theory::growth_rates(2.0, p, 2, 13.0);
  CHECK(f.V[0] == doctest::Approx(g.dR_dt).epsilon(1e-9));
}

TEST_CASE("pressure normal derivative of a single mode on a circle") {
  // eta = cos(l a) gives dp/dn = (l / 2R) cos(l a)
  ModelParams p;
  FieldSolver fs(curve::circle(64, 13.0), p);
  const double R = 1.5;
  const int l = 3;
  const kernels::Boundary tumor(curve::circle(64, R));
  std::vector<double> eta(64);
  for (int j = 0; j < 64; ++j) eta[j] = std::cos(l * 2 * kPi * j / 64.0);
  const auto dp = fs.pressure_normal_derivative(tumor, eta);
  for (int j = 0; j < 64; ++j) CHECK(std::abs(dp[j] - l / (2 * R) * eta[j]) < 1e-11);
}

TEST_CASE("probe inside the tumor matches the interior Bessel solution") {
  ModelParams p;
  p.D = 1.0;
  p.lambda = 0.01;
  FieldSolver fs(curve::circle(128, 13.0), p);
  const kernels::Boundary tumor(curve::circle(128, 2.0));
  const auto tr = fs.solve_nutrient(tumor);
  const auto c = linear_theory::radial_coefficients(2.0, 13.0, p);
  CHECK(fs.probe_sigma(tumor, tr, {0.3, 0.4}) == doctest::Approx(c.A1 * specfun::bessel_i(0, 0.5)).epsilon(1e-9));
}

TEST_CASE("GMRES and LU give the same traces") {
  ModelParams p;
  p.D = 1.0;
  p.lambda = 0.04;
  const auto far = curve::circle(64, 13.0);
  const auto tumor = curve::equal_arclength_reparametrize(
      curve::polar(64, [](double t) { return 2.0 + 0.2 * std::cos(2 * t); }));
  const auto a = solve_nutrient(tumor, far, p, 1e-12);
  FieldSolver lu(far, p, {linear_solve::Method::lu, 1e-12, 500});
  const auto b = lu.solve_nutrient(kernels::Boundary(tumor));
  for (int j = 0; j < 64; ++j) {
    CHECK(a.sigma[j] == doctest::Approx(b.sigma[j]).epsilon(1e-10));
    CHECK(a.dsigma_dn[j] == doctest::Approx(b.dsigma_dn[j]).epsilon(1e-10));
  }
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.D = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.D = 1.0;
  p.lambda = -1.0;
  CHECK_THROWS_AS(FieldSolver(curve::circle(16, 13.0), p), ConfigError);
}
