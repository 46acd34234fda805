#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tumorbim/curve.hpp"
#include "tumorbim/spectral.hpp"

// theta-L interface evolution with the small-scale decomposition and a
// second-order linear propagator (Adams-Bashforth form) in Fourier space.
namespace tumorbim::evolution {

struct Options {
  int filter_order = 25;
  double filter_strength = 10.0;   // rho(xi) = exp(-strength * xi^order), xi = 2|k|/N
  double krasny_threshold = 1e-12; // on |c_k| / N, k != 0
  double stiff_scale = 1.0;        // lambda_k = stiff_scale * |k|^3
  bool integrating_factor = true;  // false: plain AB2 on the full right-hand side
};

struct History {
  spectral::Spectrum n_hat;  // nonlinear term at t_{n-1}
  double M = 0.0;
  double s_alpha = 0.0;
  Vec2 velocity0{0.0, 0.0};  // V(0) n(0) at t_{n-1}
};

struct EvolutionState {
  std::vector<double> theta;  // tangent angle; theta - alpha is periodic
  double s_alpha = 0.0;
  Vec2 ref_point{0.0, 0.0};
  double t = 0.0;
  long steps = 0;
  std::optional<History> history;
};

/// State for an equal-arclength curve (theta lifted so theta - alpha is periodic).
EvolutionState initial_state(const MarkerCurve& c);

MarkerCurve curve_of(const EvolutionState& s);

std::vector<double> hilbert_transform(std::span<const double> samples);

/// T(alpha) = (alpha/2pi) int_0^2pi theta_a V - int_0^alpha theta_a V
std::vector<double> tangent_velocity(std::span<const double> theta, std::span<const double> V, double s_alpha);

/// N = (1/s)(theta_a T - V_a) - (1/s^3) H[theta_aaa]
std::vector<double> sde_nonlinear_term(std::span<const double> theta, double s_alpha, std::span<const double> V,
                                       std::span<const double> T);

/// Multiplies mode k by exp(-strength (2|k|/N)^order).
spectral::Spectrum fourier_filter(spectral::Spectrum c, int order, double strength = 10.0);
/// Zeroes modes k != 0 with |c_k| / N below threshold.
spectral::Spectrum krasny_filter(spectral::Spectrum c, double threshold);

/// Normal velocity on the given curve.
using VelocityFn = std::function<std::vector<double>(const MarkerCurve&)>;

/// Advances the state by dt. The velocity is evaluated on curve_of(state).
/// Throws InstabilityError if s_alpha becomes non-positive.
void step(EvolutionState& state, double dt, const VelocityFn& velocity, const Options& opt = {});

}  // namespace tumorbim::evolution
