#include "tumorbim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tumorbim/errors.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim::curve {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNewtonMaxIterations = 50;
}  // namespace

std::vector<double> spectral_derivative(std::span<const double> samples, int order) {
  if (order < 1) throw DomainError("spectral_derivative: order must be positive");
  return spectral::derivative(samples, order);
}

CurveGeometry geometry_of(const MarkerCurve& c) {
  const std::size_t n = c.size();
  if (c.y.size() != n) throw DomainError("geometry_of: x and y differ in length");
  CurveGeometry g;
  g.x_alpha = spectral::derivative(c.x, 1);
  g.y_alpha = spectral::derivative(c.y, 1);
  const auto xaa = spectral::derivative(c.x, 2);
  const auto yaa = spectral::derivative(c.y, 2);

  g.speed.resize(n);
  g.kappa.resize(n);
  g.theta.resize(n);
  g.tangent_x.resize(n);
  g.tangent_y.resize(n);
  g.normal_x.resize(n);
  g.normal_y.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::hypot(g.x_alpha[j], g.y_alpha[j]);
    if (!(s > kDegenerateSpeed)) {
      throw DegenerateCurveError("geometry_of: s_alpha collapsed at marker " + std::to_string(j));
    }
    g.speed[j] = s;
    g.kappa[j] = (g.x_alpha[j] * yaa[j] - xaa[j] * g.y_alpha[j]) / (s * s * s);
    g.tangent_x[j] = g.x_alpha[j] / s;
    g.tangent_y[j] = g.y_alpha[j] / s;
    g.normal_x[j] = g.tangent_y[j];
    g.normal_y[j] = -g.tangent_x[j];
  }

  // lift atan2 by principal-value increments
  g.theta[0] = std::atan2(g.y_alpha[0], g.x_alpha[0]);
  for (std::size_t j = 1; j < n; ++j) {
    double d = std::atan2(g.y_alpha[j], g.x_alpha[j]) - std::atan2(g.y_alpha[j - 1], g.x_alpha[j - 1]);
    d = std::remainder(d, kTwoPi);
    g.theta[j] = g.theta[j - 1] + d;
  }

  g.s_alpha = spectral::mean(g.speed);
  g.length = kTwoPi * g.s_alpha;
  return g;
}

MarkerCurve equal_arclength_reparametrize(const MarkerCurve& c, double tol) {
  const std::size_t n = c.size();
  const auto xa = spectral::derivative(c.x, 1);
  const auto ya = spectral::derivative(c.y, 1);
  std::vector<double> speed(n);
  for (std::size_t j = 0; j < n; ++j) speed[j] = std::hypot(xa[j], ya[j]);
  const double s_mean = spectral::mean(speed);
  const double length = kTwoPi * s_mean;

  // S(a) = s_mean * a + F(a), F periodic
  const spectral::TrigInterpolant fluctuation(spectral::antiderivative(speed));
  const spectral::TrigInterpolant sx(c.x), sy(c.y);

  MarkerCurve out{std::vector<double>(n), std::vector<double>(n)};
  double a = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = length * static_cast<double>(j) / static_cast<double>(n);
    if (j > 0) a = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    bool converged = false;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const double residual = s_mean * a + fluctuation(a) - target;
      if (std::abs(residual) <= tol * length) {
        converged = true;
        break;
      }
      const double slope = s_mean + fluctuation.derivative(a);
      if (!(slope > 0.0)) throw ReparametrizationError("equal_arclength_reparametrize: non-positive s_alpha");
      a -= residual / slope;
    }
    if (!converged) {
      throw ReparametrizationError("equal_arclength_reparametrize: Newton failed at marker " + std::to_string(j));
    }
    out.x[j] = sx(a);
    out.y[j] = sy(a);
  }
  return out;
}

MarkerCurve reconstruct_curve(std::span<const double> theta, double s_alpha, Vec2 ref_point) {
  const std::size_t n = theta.size();
  std::vector<double> ct(n), st(n);
  for (std::size_t j = 0; j < n; ++j) {
    ct[j] = std::cos(theta[j]);
    st[j] = std::sin(theta[j]);
  }
  const auto fx = spectral::antiderivative(ct);
  const auto fy = spectral::antiderivative(st);
  MarkerCurve c{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    c.x[j] = ref_point[0] + s_alpha * fx[j];
    c.y[j] = ref_point[1] + s_alpha * fy[j];
  }
  return c;
}

AreaLength area_and_length(const MarkerCurve& c) {
  const std::size_t n = c.size();
  const auto xa = spectral::derivative(c.x, 1);
  const auto ya = spectral::derivative(c.y, 1);
  double area = 0.0, len = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    area += c.x[j] * ya[j] - c.y[j] * xa[j];
    len += std::hypot(xa[j], ya[j]);
  }
  const double h = kTwoPi / static_cast<double>(n);
  return {0.5 * area * h, len * h};
}

MarkerCurve circle(std::size_t n, double radius, Vec2 center) {
  MarkerCurve c = polar(n, [radius](double) { return radius; });
  for (std::size_t j = 0; j < n; ++j) {
    c.x[j] += center[0];
    c.y[j] += center[1];
  }
  return c;
}

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

bool segments_cross(const MarkerCurve& c, std::size_t i, std::size_t j) {
  const std::size_t n = c.size();
  const std::size_t i2 = (i + 1) % n, j2 = (j + 1) % n;
  const double px = c.x[i], py = c.y[i];
  const double rx = c.x[i2] - px, ry = c.y[i2] - py;
  const double qx = c.x[j], qy = c.y[j];
  const double sx = c.x[j2] - qx, sy = c.y[j2] - qy;
  const double d = cross(rx, ry, sx, sy);
  if (d == 0.0) return false;
  const double t = cross(qx - px, qy - py, sx, sy) / d;
  const double u = cross(qx - px, qy - py, rx, ry) / d;
  return t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0;
}

}  // namespace

bool is_simple(const MarkerCurve& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the seam
      if (segments_cross(c, i, j)) return false;
    }
  }
  return true;
}

bool contains(const MarkerCurve& c, Vec2 p) {
  const std::size_t n = c.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool straddles = (c.y[i] > p[1]) != (c.y[j] > p[1]);
    if (straddles) {
      const double xc = c.x[j] + (p[1] - c.y[j]) * (c.x[i] - c.x[j]) / (c.y[i] - c.y[j]);
      if (p[0] < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace tumorbim::curve
