#pragma once

#include "tumorbim/kernels.hpp"

// Discrete Nystrom operators. Each matrix acts on nodal densities:
//   (S phi)_i = sum_j S_ij phi_j  ~  int G(x_i, x(a')) phi(a') s(a') da'
//   (D phi)_i = sum_j D_ij phi_j  ~  PV int dG/dn'(x_i, x(a')) phi(a') s(a') da'
// Self blocks use the Kress split; cross blocks the trapezoid rule.
//
// The parallel versions distribute rows over OpenMP threads. The namespace
// `reference` holds plain serial loops with identical arithmetic, kept for
// tests and the benchmark.
namespace tumorbim::assembly {

using kernels::Boundary;
using kernels::KressRule;
using kernels::Matrix;

struct LayerBlocks {
  Matrix single;
  Matrix dbl;
};

LayerBlocks helmholtz_self(const Boundary& b, double mu, const KressRule& rule);
LayerBlocks helmholtz_cross(const Boundary& tgt, const Boundary& src, double mu);
Matrix laplace_double(const Boundary& b);
Matrix laplace_single_self(const Boundary& b, const KressRule& rule);

/// Self blocks by product integration against the trigonometric cardinal functions.
/// Used for curves with large mu * diameter, where the global Kress split cancels
/// against I0(mu r) and loses digits. Costs O(N^2 log N + N^2 Q).
LayerBlocks helmholtz_self_product(const Boundary& b, double mu);

/// I0(mu * diameter) above which helmholtz_self_product is preferred.
inline constexpr double kProductIntegrationThreshold = 1e4;
bool prefers_product_integration(const Boundary& b, double mu);

namespace reference {
LayerBlocks helmholtz_self(const Boundary& b, double mu, const KressRule& rule);
LayerBlocks helmholtz_cross(const Boundary& tgt, const Boundary& src, double mu);
Matrix laplace_double(const Boundary& b);
Matrix laplace_single_self(const Boundary& b, const KressRule& rule);
}  // namespace reference

}  // namespace tumorbim::assembly
