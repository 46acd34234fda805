#include <algorithm>

#include "tumorbim/assembly.hpp"
#include "tumorbim/errors.hpp"

namespace tumorbim::assembly {

namespace {

void check_rule(const Boundary& b, const KressRule& rule) {
  if (rule.weights.size() != b.size()) throw DomainError("assembly: Kress rule size does not match the curve");
}

std::ptrdiff_t signed_size(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

LayerBlocks helmholtz_self(const Boundary& b, double mu, const KressRule& rule) {
  check_rule(b, rule);
  const std::ptrdiff_t n = signed_size(b.size());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  LayerBlocks out{Matrix(n, n), Matrix(n, n)};
  const auto& q = rule.weights;
  const auto& speed = b.geom.speed;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const auto e = kernels::helmholtz_self_entry(b, i, j, mu);
      const double w = q[std::abs(i - j)];
      out.single(i, j) = (w * e.single.log_part + h * e.single.smooth_part) * speed[j];
      out.dbl(i, j) = w * e.dbl.log_part + h * e.dbl.smooth_part;
    }
  }
  return out;
}

LayerBlocks helmholtz_cross(const Boundary& tgt, const Boundary& src, double mu) {
  const std::ptrdiff_t nt = signed_size(tgt.size()), ns = signed_size(src.size());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(ns);
  LayerBlocks out{Matrix(nt, ns), Matrix(nt, ns)};
  const auto& speed = src.geom.speed;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nt; ++i) {
    for (std::ptrdiff_t j = 0; j < ns; ++j) {
      const auto e = kernels::helmholtz_cross_entry(tgt, i, src, j, mu);
      out.single(i, j) = h * e.single * speed[j];
      out.dbl(i, j) = h * e.dbl;
    }
  }
  return out;
}

Matrix laplace_double(const Boundary& b) {
  const std::ptrdiff_t n = signed_size(b.size());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  Matrix m(n, n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) m(i, j) = h * kernels::laplace_double_kernel(b, i, j);
  }
  return m;
}

Matrix laplace_single_self(const Boundary& b, const KressRule& rule) {
  check_rule(b, rule);
  const std::ptrdiff_t n = signed_size(b.size());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  Matrix m(n, n);
  const auto& q = rule.weights;
  const auto& speed = b.geom.speed;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      const auto e = kernels::laplace_single_self_entry(b, i, j);
      m(i, j) = (q[std::abs(i - j)] * e.log_part + h * e.smooth_part) * speed[j];
    }
  }
  return m;
}

bool prefers_product_integration(const Boundary& b, double mu) {
  const auto [xmin, xmax] = std::minmax_element(b.curve.x.begin(), b.curve.x.end());
  const auto [ymin, ymax] = std::minmax_element(b.curve.y.begin(), b.curve.y.end());
  const double diam = std::hypot(*xmax - *xmin, *ymax - *ymin);
  double i0, i1;
  specfun::bessel_i01(mu * diam, i0, i1);
  return i0 > kProductIntegrationThreshold;
}

}  // namespace tumorbim::assembly
