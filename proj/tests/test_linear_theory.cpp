#include <cmath>

#include <doctest.h>

#include "tumorbim/errors.hpp"
#include "tumorbim/linear_theory.hpp"
#include "tumorbim/specfun.hpp"

using namespace tumorbim;
namespace lt = tumorbim::linear_theory;

namespace {
ModelParams fig4() {
  ModelParams p;
  p.D = 1.0;
  p.lambda = 0.01;
  p.chi = 5.0;
  p.P = 0.5;
  p.A = 0.0;
  p.Ginv = 0.001;
  return p;
}
}  // namespace

TEST_CASE("radial coefficients satisfy the boundary conditions") {
  auto p = fig4();
  p.D = 3.0;
  const double R = 2.5, Ri = 13.0, mu2 = p.mu2();
  const auto c = lt::radial_coefficients(R, Ri, p);
  using specfun::bessel_i, specfun::bessel_k;
  const double s1 = c.A1 * bessel_i(0, R);
  const double s2 = c.A2 * bessel_i(0, mu2 * R) + c.A3 * bessel_k(0, mu2 * R);
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-13));
  const double f1 = c.A1 * bessel_i(1, R);
  const double f2 = p.D * mu2 * (c.A2 * bessel_i(1, mu2 * R) - c.A3 * bessel_k(1, mu2 * R));
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));
  CHECK(c.A2 * bessel_i(0, mu2 * Ri) + c.A3 * bessel_k(0, mu2 * Ri) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("critical apoptosis zeroes the shape growth rate") {
  for (double Lambda : {10.0, std::sqrt(10.0)}) {
    for (int l : {2, 4}) {
      for (double R = 1.0; R <= 12.0; R += 0.5) {
        auto p = fig4();
        p.lambda = p.D / (Lambda * Lambda);
        p.A = lt::critical_apoptosis(R, p, l, 13.0);
        CHECK(std::abs(lt::growth_rates(R, p, l, 13.0).shape_rate) < 1e-12);
      }
    }
  }
}

TEST_CASE("without proliferation and apoptosis the radius is steady") {
  auto p = fig4();
  p.P = 0.0;
  const auto tr = lt::integrate_linear_ode({2.0, 0.1, 2, 13.0}, p, 1.0, 0.01);
  REQUIRE_FALSE(tr.truncated);
  CHECK(tr.points.size() == 101);
  CHECK(tr.points.back().R == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("RK4 trajectory converges at fourth order") {
  const auto p = fig4();
  auto end = [&](double dt) { return lt::integrate_linear_ode({2.0, 0.1, 2, 13.0}, p, 2.0, dt).points.back(); };
  const auto a = end(0.2), b = end(0.1), c = end(0.05);
  const double ratio = std::abs(a.delta - b.delta) / std::abs(b.delta - c.delta);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("rates are consistent with the first-order traces") {
  const auto p = fig4();
  const auto g = lt::growth_rates(2.0, p, 3, 13.0);
  const auto r = lt::radial_traces(2.0, 13.0, p);
  CHECK(g.dR_dt == doctest::Approx(p.P * r.flux).epsilon(1e-14));
  const auto f = lt::first_order_traces(2.0, 13.0, p, 3);
  // delta_rate is the cos(l a) coefficient of V
  CHECK(g.delta_rate == doctest::Approx(p.P * f.flux - f.dp_dn - p.A / p.d).epsilon(1e-12));
  CHECK(g.shape_rate == doctest::Approx(g.delta_rate - g.dR_dt / 2.0).epsilon(1e-12));
}

TEST_CASE("stronger taxis lowers A_c; a smaller penetration length raises it") {
  // nutrient-poor tumors (D = 1) of moderate size
  for (double R : {1.0, 2.0, 4.0}) {
    auto p = fig4();
    double prev = 1e300;
    for (double chi : {0.0, 1.0, 5.0, 10.0}) {
      p.chi = chi;
      const double ac = lt::critical_apoptosis(R, p, 2, 13.0);
      CHECK(ac < prev);
      prev = ac;
    }
    p.chi = 5.0;
    p.lambda = 0.01;  // Lambda = 10
    const double wide = lt::critical_apoptosis(R, p, 2, 13.0);
    p.lambda = 0.1;  // Lambda = sqrt(10)
    CHECK(lt::critical_apoptosis(R, p, 2, 13.0) > wide);
  }
}

TEST_CASE("invalid arguments") {
  const auto p = fig4();
  CHECK_THROWS_AS(lt::radial_coefficients(14.0, 13.0, p), DomainError);
  CHECK_THROWS_AS(lt::perturbation_coefficients(2.0, 13.0, p, 0), DomainError);
  CHECK_THROWS_AS(lt::integrate_linear_ode({}, p, 1.0, 0.0), DomainError);
}
