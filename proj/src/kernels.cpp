#include "tumorbim/kernels.hpp"

#include <cstdlib>

#include "tumorbim/errors.hpp"

namespace tumorbim::kernels {

Boundary::Boundary(MarkerCurve c) : curve(std::move(c)), geom(curve::geometry_of(curve)) {}

KressRule kress_weights(int m) {
  if (m < 2) throw DomainError("kress_weights: m must be >= 2");
  KressRule rule{m, std::vector<double>(2 * m)};
  const double pi = std::numbers::pi;
  for (int j = 0; j < 2 * m; ++j) {
    double s = 0.0;
    for (int k = 1; k < m; ++k) s += std::cos(k * j * pi / m) / k;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    rule.weights[j] = -(pi / m) * s - sign * pi / (2.0 * m * m);
  }
  return rule;
}

double singular_log_quadrature(const KressRule& rule, std::span<const double> f_samples, std::size_t i) {
  const std::size_t n = rule.weights.size();
  if (f_samples.size() != n) throw DomainError("singular_log_quadrature: sample count mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t d = j >= i ? j - i : i - j;
    s += rule.weights[d] * f_samples[j];
  }
  return s;
}

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0)) throw DomainError("Helmholtz kernel: mu must be positive");
}

SplitKernel split(const Boundary& src, const Boundary& tgt, double mu, bool single) {
  check_mu(mu);
  const std::size_t nt = tgt.size(), ns = src.size();
  SplitKernel k{Matrix::Zero(nt, ns), Matrix::Zero(nt, ns)};
  const bool self = &src == &tgt;
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < ns; ++j) {
      if (self) {
        const auto e = helmholtz_self_entry(src, i, j, mu);
        const SplitValue v = single ? e.single : e.dbl;
        k.log_part(i, j) = v.log_part;
        k.smooth_part(i, j) = v.smooth_part;
      } else {
        const auto e = helmholtz_cross_entry(tgt, i, src, j, mu);
        k.smooth_part(i, j) = single ? e.single : e.dbl;
      }
    }
  }
  return k;
}

}  // namespace

SplitKernel split_helmholtz_single(const Boundary& src, const Boundary& tgt, double mu) {
  return split(src, tgt, mu, true);
}

SplitKernel split_helmholtz_double(const Boundary& src, const Boundary& tgt, double mu) {
  return split(src, tgt, mu, false);
}

double laplace_double_kernel(const Boundary& b, std::size_t i, std::size_t j) {
  const auto& g = b.geom;
  if (i == j) return 0.5 * kInvTwoPi * g.kappa[i] * g.speed[i];
  const double dx = b.curve.x[j] - b.curve.x[i];
  const double dy = b.curve.y[j] - b.curve.y[i];
  return kInvTwoPi * (dx * g.normal_x[j] + dy * g.normal_y[j]) * g.speed[j] / (dx * dx + dy * dy);
}

}  // namespace tumorbim::kernels
