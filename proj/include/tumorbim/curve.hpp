#pragma once

#include <array>
#include <span>
#include <vector>

// Closed 2*pi-periodic curves sampled at alpha_j = 2*pi*j/N and their spectral geometry.
namespace tumorbim {

struct MarkerCurve {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
};

using Vec2 = std::array<double, 2>;

struct CurveGeometry {
  std::vector<double> theta;   // continuous tangent angle
  double s_alpha = 0.0;        // L / 2pi
  std::vector<double> speed;   // pointwise |x_alpha|; equals s_alpha for equal-arclength curves
  std::vector<double> kappa;
  std::vector<double> x_alpha, y_alpha;
  std::vector<double> tangent_x, tangent_y;
  std::vector<double> normal_x, normal_y;  // outward: (sin theta, -cos theta)
  double length = 0.0;
};

namespace curve {

constexpr double kDegenerateSpeed = 1e-12;

std::vector<double> spectral_derivative(std::span<const double> samples, int order);

CurveGeometry geometry_of(const MarkerCurve& c);

/// Equal-arclength resampling. Newton on the Fourier arclength function,
/// residual <= tol * L. Throws ReparametrizationError after 50 iterations.
MarkerCurve equal_arclength_reparametrize(const MarkerCurve& c, double tol = 1e-14);

/// x(alpha) = ref + s_alpha * (int_0^alpha cos(theta) - alpha * mean(cos(theta))), same for y.
MarkerCurve reconstruct_curve(std::span<const double> theta, double s_alpha, Vec2 ref_point);

struct AreaLength {
  double area;
  double length;
};

AreaLength area_and_length(const MarkerCurve& c);

/// Polar curve r(phi) sampled at phi_j = alpha_j (not equal-arclength).
template <class RadiusFn>
MarkerCurve polar(std::size_t n, RadiusFn&& radius);

MarkerCurve circle(std::size_t n, double radius, Vec2 center = {0.0, 0.0});

/// O(N^2) segment test on the marker polygon; a diagnostic only.
bool is_simple(const MarkerCurve& c);

/// Point-in-polygon on the marker polygon.
bool contains(const MarkerCurve& c, Vec2 p);

}  // namespace curve
}  // namespace tumorbim

#include <cmath>
#include <numbers>

namespace tumorbim::curve {

template <class RadiusFn>
MarkerCurve polar(std::size_t n, RadiusFn&& radius) {
  MarkerCurve c{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const double r = radius(phi);
    c.x[j] = r * std::cos(phi);
    c.y[j] = r * std::sin(phi);
  }
  return c;
}

}  // namespace tumorbim::curve
