#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tumorbim/curve.hpp"
#include "tumorbim/specfun.hpp"

// Green's functions for the 2D Laplace and modified Helmholtz operators.
//
// Conventions (n outward, counter-clockwise curves):
//   Laplace    G(x, x') = (1/2pi) ln|x - x'|
//   Helmholtz  G(x, x') = (1/2pi) K0(mu |x - x'|)
// Double-layer kernels are dG/dn' times the source speed s(alpha'), i.e. per d alpha'.
// Single-layer kernels are G itself; the caller multiplies by s(alpha').
// Self-interaction kernels are split as  log_part * L(alpha, alpha') + smooth_part,
// with L = ln(2|sin((alpha - alpha')/2)|), and smooth_part carries the diagonal limit.
namespace tumorbim::kernels {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A curve bundled with its geometry; the unit every kernel routine reads.
struct Boundary {
  MarkerCurve curve;
  CurveGeometry geom;

  explicit Boundary(MarkerCurve c);
  std::size_t size() const { return curve.size(); }
};

struct KressRule {
  int m = 0;
  std::vector<double> weights;  // 2m entries, q_j
};

KressRule kress_weights(int m);

/// sum_j q_{|j - i|} f_j  ~  int_0^{2pi} f(alpha') L(alpha_i, alpha') d alpha'
double singular_log_quadrature(const KressRule& rule, std::span<const double> f_samples, std::size_t i);

struct SplitKernel {
  Matrix log_part;
  Matrix smooth_part;
};

/// Rows are targets, columns sources. A self split is produced when src and tgt are
/// the same object; otherwise log_part is zero and smooth_part is the plain kernel.
SplitKernel split_helmholtz_single(const Boundary& src, const Boundary& tgt, double mu);
SplitKernel split_helmholtz_double(const Boundary& src, const Boundary& tgt, double mu);

/// Laplace double-layer kernel (x' - x).n' s' / (2 pi r^2); diagonal kappa s / (4 pi).
double laplace_double_kernel(const Boundary& b, std::size_t i, std::size_t j);

/// ln(2|sin((a - b)/2)|) for node indices on an N-point grid (i != j).
inline double log_sin(std::size_t i, std::size_t j, std::size_t n) {
  const double d = std::numbers::pi * (static_cast<double>(i) - static_cast<double>(j)) / static_cast<double>(n);
  return std::log(2.0 * std::abs(std::sin(d)));
}

// ---- per-entry values shared by the serial and parallel assembly ----

struct SplitValue {
  double log_part;
  double smooth_part;
};

struct HelmholtzSelfEntry {
  SplitValue single;  // G split, no speed factor
  SplitValue dbl;     // dG/dn' s' split
};

inline constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

inline HelmholtzSelfEntry helmholtz_self_entry(const Boundary& b, std::size_t i, std::size_t j, double mu) {
  const auto& g = b.geom;
  if (i == j) {
    const double s = g.speed[i];
    return {{-kInvTwoPi, -kInvTwoPi * (std::log(0.5 * mu * s) + specfun::kEulerGamma)},
            {0.0, -0.5 * kInvTwoPi * g.kappa[i] * s}};
  }
  const double dx = b.curve.x[i] - b.curve.x[j];
  const double dy = b.curve.y[i] - b.curve.y[j];
  const double r = std::hypot(dx, dy);
  const auto bes = specfun::bessel_ik01(mu * r);
  const double ell = log_sin(i, j, b.size());
  const double h = mu * (dx * g.normal_x[j] + dy * g.normal_y[j]) * g.speed[j] * kInvTwoPi / r;
  return {{-kInvTwoPi * bes.i0, kInvTwoPi * (bes.k0 + bes.i0 * ell)},
          {h * bes.i1, h * (bes.k1 - bes.i1 * ell)}};
}

struct CrossEntry {
  double single;  // G
  double dbl;     // dG/dn' s'
};

inline CrossEntry helmholtz_cross_entry(const Boundary& tgt, std::size_t i, const Boundary& src, std::size_t j,
                                        double mu) {
  const double dx = tgt.curve.x[i] - src.curve.x[j];
  const double dy = tgt.curve.y[i] - src.curve.y[j];
  const double r = std::hypot(dx, dy);
  const auto bes = specfun::bessel_ik01(mu * r);
  const auto& g = src.geom;
  const double h = mu * (dx * g.normal_x[j] + dy * g.normal_y[j]) * g.speed[j] * kInvTwoPi / r;
  return {kInvTwoPi * bes.k0, h * bes.k1};
}

/// Laplace single layer (1/2pi) ln r split for a self interaction.
inline SplitValue laplace_single_self_entry(const Boundary& b, std::size_t i, std::size_t j) {
  if (i == j) return {kInvTwoPi, kInvTwoPi * std::log(b.geom.speed[i])};
  const double r = std::hypot(b.curve.x[i] - b.curve.x[j], b.curve.y[i] - b.curve.y[j]);
  return {kInvTwoPi, kInvTwoPi * (std::log(r) - log_sin(i, j, b.size()))};
}

}  // namespace tumorbim::kernels
