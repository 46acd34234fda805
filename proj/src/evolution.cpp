#include "tumorbim/evolution.hpp"

#include <cmath>
#include <numbers>

#include "tumorbim/errors.hpp"

namespace tumorbim::evolution {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double alpha_at(std::size_t j, std::size_t n) { return kTwoPi * static_cast<double>(j) / static_cast<double>(n); }

// psi = theta - alpha, periodic
std::vector<double> periodic_part(std::span<const double> theta) {
  const std::size_t n = theta.size();
  std::vector<double> psi(n);
  for (std::size_t j = 0; j < n; ++j) psi[j] = theta[j] - alpha_at(j, n);
  return psi;
}

std::vector<double> theta_alpha(std::span<const double> theta) {
  auto d = spectral::derivative(periodic_part(theta), 1);
  for (double& v : d) v += 1.0;
  return d;
}

double stiff_symbol(std::size_t j, std::size_t n, double scale) {
  if (j == n / 2) return 0.0;  // H and odd derivatives drop the Nyquist mode
  const double k = std::abs(spectral::wavenumber(j, n));
  return scale * k * k * k;
}

}  // namespace

EvolutionState initial_state(const MarkerCurve& c) {
  const auto g = curve::geometry_of(c);
  EvolutionState s;
  s.theta = g.theta;
  s.s_alpha = g.s_alpha;
  s.ref_point = {c.x[0], c.y[0]};
  const double wind = g.theta.back() - g.theta.front() + (g.theta[1] - g.theta[0]);
  if (std::abs(wind - kTwoPi) > 0.5) {
    throw GeometryError("initial_state: curve must be simple and counter-clockwise");
  }
  return s;
}

MarkerCurve curve_of(const EvolutionState& s) { return curve::reconstruct_curve(s.theta, s.s_alpha, s.ref_point); }

std::vector<double> hilbert_transform(std::span<const double> samples) { return spectral::hilbert(samples); }

std::vector<double> tangent_velocity(std::span<const double> theta, std::span<const double> V, double) {
  const auto ta = theta_alpha(theta);
  std::vector<double> g(V.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = ta[j] * V[j];
  auto t = spectral::antiderivative(g);
  for (double& v : t) v = -v;
  return t;
}

std::vector<double> sde_nonlinear_term(std::span<const double> theta, double s_alpha, std::span<const double> V,
                                       std::span<const double> T) {
  const std::size_t n = theta.size();
  const auto ta = theta_alpha(theta);
  const auto va = spectral::derivative(V, 1);
  const auto psi = periodic_part(theta);
  const auto h = spectral::hilbert(spectral::derivative(psi, 3));
  const double s3 = s_alpha * s_alpha * s_alpha;
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = (ta[j] * T[j] - va[j]) / s_alpha - h[j] / s3;
  return out;
}

spectral::Spectrum fourier_filter(spectral::Spectrum c, int order, double strength) {
  const std::size_t n = c.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = 2.0 * std::abs(spectral::wavenumber(j, n)) / static_cast<double>(n);
    c[j] *= std::exp(-strength * std::pow(xi, order));
  }
  return c;
}

spectral::Spectrum krasny_filter(spectral::Spectrum c, double threshold) {
  const std::size_t n = c.size();
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(c[j]) / static_cast<double>(n) < threshold) c[j] = 0.0;
  }
  return c;
}

void step(EvolutionState& state, double dt, const VelocityFn& velocity, const Options& opt) {
  if (!(dt > 0.0)) throw DomainError("evolution::step: dt must be positive");
  const std::size_t n = state.theta.size();
  const MarkerCurve c = curve_of(state);
  const auto V = velocity(c);
  if (V.size() != n) throw DomainError("evolution::step: velocity has wrong length");

  const double s = state.s_alpha;
  const auto ta = theta_alpha(state.theta);
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = ta[j] * V[j];
  const double M = spectral::mean(g);
  auto T = spectral::antiderivative(g);
  for (double& v : T) v = -v;

  const bool first = !state.history.has_value();
  const History prev = first ? History{} : *state.history;

  // arclength first: the integrating factors need s^{n+1}
  const double s_next = first ? s + dt * M : s + 0.5 * dt * (3.0 * M - prev.M);
  if (!(s_next > 0.0)) throw InstabilityError("evolution::step: s_alpha became non-positive");

  const double scale = opt.integrating_factor ? opt.stiff_scale : 0.0;
  const auto va = spectral::derivative(V, 1);
  std::vector<double> rhs(n);
  for (std::size_t j = 0; j < n; ++j) rhs[j] = (ta[j] * T[j] - va[j]) / s;
  auto n_hat = spectral::forward(rhs);
  auto psi_hat = spectral::forward(periodic_part(state.theta));
  const double inv_s3 = 1.0 / (s * s * s);
  const double inv_sn3 = 1.0 / (s_next * s_next * s_next);
  for (std::size_t j = 0; j < n; ++j) n_hat[j] += stiff_symbol(j, n, scale) * inv_s3 * psi_hat[j];

  spectral::Spectrum next(n);
  if (first) {
    for (std::size_t j = 0; j < n; ++j) {
      const double e1 = std::exp(-stiff_symbol(j, n, scale) * 0.5 * dt * (inv_s3 + inv_sn3));
      next[j] = e1 * (psi_hat[j] + dt * n_hat[j]);
    }
  } else {
    const double inv_sp3 = 1.0 / (prev.s_alpha * prev.s_alpha * prev.s_alpha);
    for (std::size_t j = 0; j < n; ++j) {
      const double lam = stiff_symbol(j, n, scale);
      const double e1 = std::exp(-lam * 0.5 * dt * (inv_s3 + inv_sn3));
      const double e2 = std::exp(-lam * dt * (0.5 * inv_sp3 + inv_s3 + 0.5 * inv_sn3));
      next[j] = e1 * psi_hat[j] + 0.5 * dt * (3.0 * e1 * n_hat[j] - e2 * prev.n_hat[j]);
    }
  }
  next = krasny_filter(fourier_filter(std::move(next), opt.filter_order, opt.filter_strength), opt.krasny_threshold);
  const auto psi_next = spectral::inverse(next);

  // reference point moves with V n only
  const double th0 = state.theta[0];
  const Vec2 vel0{V[0] * std::sin(th0), -V[0] * std::cos(th0)};
  Vec2 ref = state.ref_point;
  for (int k = 0; k < 2; ++k) {
    ref[k] += first ? dt * vel0[k] : 0.5 * dt * (3.0 * vel0[k] - prev.velocity0[k]);
  }

  for (std::size_t j = 0; j < n; ++j) state.theta[j] = psi_next[j] + alpha_at(j, n);
  state.history = History{std::move(n_hat), M, s, vel0};
  state.s_alpha = s_next;
  state.ref_point = ref;
  state.t += dt;
  ++state.steps;
}

}  // namespace tumorbim::evolution
