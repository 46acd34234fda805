#include <cmath>
#include <numbers>

#include <doctest.h>

#include "tumorbim/errors.hpp"
#include "tumorbim/spectral.hpp"

using namespace tumorbim;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sample(std::size_t n, auto f) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = f(2.0 * kPi * double(j) / double(n));
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("sizes and wavenumbers") {
  CHECK(spectral::is_power_of_two(64));
  CHECK_FALSE(spectral::is_power_of_two(48));
  CHECK(spectral::wavenumber(0, 8) == 0);
  CHECK(spectral::wavenumber(3, 8) == 3);
  CHECK(spectral::wavenumber(5, 8) == -3);
  CHECK_THROWS_AS(spectral::forward(std::vector<double>(12, 1.0)), DomainError);
}

TEST_CASE("forward and inverse round trip") {
  const auto f = sample(32, [](double a) { return std::exp(std::sin(a)); });
  CHECK(max_diff(spectral::inverse(spectral::forward(f)), f) < 1e-14);
}

TEST_CASE("derivatives of a smooth periodic function") {
  const auto f = sample(64, [](double a) { return std::exp(std::sin(a)); });
  const auto d1 = sample(64, [](double a) { return std::cos(a) * std::exp(std::sin(a)); });
  const auto d2 = sample(64, [](double a) {
    return (std::cos(a) * std::cos(a) - std::sin(a)) * std::exp(std::sin(a));
  });
  CHECK(max_diff(spectral::derivative(f, 1), d1) < 1e-12);
  CHECK(max_diff(spectral::derivative(f, 2), d2) < 1e-11);
}

TEST_CASE("antiderivative removes the mean and vanishes at zero") {
  const auto f = sample(32, [](double a) { return 2.0 + std::cos(3 * a); });
  const auto F = spectral::antiderivative(f);
  const auto ex = sample(32, [](double a) { return std::sin(3 * a) / 3.0; });
  CHECK(spectral::mean(f) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(max_diff(F, ex) < 1e-14);
}

TEST_CASE("hilbert transform maps cos to sin") {
  const auto f = sample(32, [](double a) { return std::cos(2 * a) + 0.5 * std::sin(5 * a) + 3.0; });
  const auto ex = sample(32, [](double a) { return std::sin(2 * a) - 0.5 * std::cos(5 * a); });
  CHECK(max_diff(spectral::hilbert(f), ex) < 1e-14);
}

TEST_CASE("interpolation, resampling and shifting are exact for band-limited data") {
  auto g = [](double a) { return 1.0 + std::cos(a) - 0.3 * std::sin(7 * a); };
  const auto f = sample(16, g);
  const std::vector<double> pts{0.1, 1.234, 4.0, 6.2};
  const auto v = spectral::interpolate(f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(v[i] == doctest::Approx(g(pts[i])).epsilon(1e-13));
  CHECK(max_diff(spectral::resample(f, 64), sample(64, g)) < 1e-14);
  CHECK(max_diff(spectral::shifted(f, 0.37), sample(16, [&](double a) { return g(a + 0.37); })) < 1e-14);
  CHECK_THROWS_AS(spectral::resample(f, 8), DomainError);

  const spectral::TrigInterpolant ti(f);
  CHECK(ti(2.5) == doctest::Approx(g(2.5)).epsilon(1e-13));
  CHECK(ti.derivative(2.5) == doctest::Approx(-std::sin(2.5) - 2.1 * std::cos(17.5)).epsilon(1e-12));
}

TEST_CASE("cardinal function is one at the node and zero at the others") {
  const std::size_t n = 16;
  CHECK(spectral::cardinal(0.0, n) == doctest::Approx(1.0));
  for (std::size_t m = 1; m < n; ++m) CHECK(std::abs(spectral::cardinal(2 * kPi * m / n, n)) < 1e-14);
}
