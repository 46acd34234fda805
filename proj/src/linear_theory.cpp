#include "tumorbim/linear_theory.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "tumorbim/errors.hpp"
#include "tumorbim/specfun.hpp"

namespace tumorbim::linear_theory {

namespace sf = specfun;

namespace {

void check(double R, double R_inf, const ModelParams& p) {
  p.validate();
  if (!(R > 0.0) || !(R < R_inf)) throw DomainError("linear theory: need 0 < R < R_inf");
}

Eigen::Vector3d solve3(const Eigen::Matrix3d& m, const Eigen::Vector3d& rhs) {
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) throw DomainError("linear theory: singular boundary-condition system");
  return lu.solve(rhs);
}

}  // namespace

RadialCoefficients radial_coefficients(double R, double R_inf, const ModelParams& p) {
  check(R, R_inf, p);
  const double m1 = p.mu1, m2 = p.mu2();
  const double x1 = m1 * R, x2 = m2 * R, xi = m2 * R_inf;
  Eigen::Matrix3d a;
  Eigen::Vector3d b(0.0, 1.0, 0.0);
  // continuity, far-field value, flux continuity
  a << sf::bessel_i(0, x1), -sf::bessel_i(0, x2), -sf::bessel_k(0, x2),
       0.0, sf::bessel_i(0, xi), sf::bessel_k(0, xi),
       m1 * sf::bessel_i(1, x1), -p.D * m2 * sf::bessel_i(1, x2), p.D * m2 * sf::bessel_k(1, x2);
  const auto c = solve3(a, b);
  return {c[0], c[1], c[2]};
}

PerturbationCoefficients perturbation_coefficients(double R, double R_inf, const ModelParams& p, int l) {
  if (l < 1) throw DomainError("perturbation_coefficients: mode must be >= 1");
  const auto [A1, A2, A3] = radial_coefficients(R, R_inf, p);
  const double m1 = p.mu1, m2 = p.mu2();
  const double x1 = m1 * R, x2 = m2 * R, xi = m2 * R_inf;
  const double k0 = sf::bessel_k(0, x2), k1 = sf::bessel_k(1, x2);
  Eigen::Matrix3d a;
  a << sf::bessel_i(l, x1), -sf::bessel_i(l, x2), -sf::bessel_k(l, x2),
       0.0, sf::bessel_i(l, xi), sf::bessel_k(l, xi),
       m1 * sf::bessel_i_prime(l, x1), -p.D * m2 * sf::bessel_i_prime(l, x2), -p.D * m2 * sf::bessel_k_prime(l, x2);
  Eigen::Vector3d b;
  b << A1 * m1 * sf::bessel_i(1, x1) * (1.0 / p.D - 1.0),
       0.0,
       -A1 * m1 * m1 * sf::bessel_i_prime(1, x1) +
           p.D * (A2 * m2 * m2 * sf::bessel_i_prime(1, x2) + A3 * m2 * m2 * (k0 + k1 / x2));
  const auto c = solve3(a, b);
  return {c[0], c[1], c[2]};
}

namespace {

struct Pieces {
  double C;
  double flux1;      // first-order flux coefficient
  double taxis;      // B1 (l/R) I_l + (l/R) C
};

Pieces pieces(double R, const ModelParams& p, int l, double R_inf) {
  const auto A = radial_coefficients(R, R_inf, p);
  const auto B = perturbation_coefficients(R, R_inf, p, l);
  const double m1 = p.mu1, x1 = m1 * R;
  const double i0 = sf::bessel_i(0, x1), i1 = sf::bessel_i(1, x1);
  const double il = sf::bessel_i(l, x1), ilm = sf::bessel_i(l - 1, x1);
  const double C = m1 * A.A1 * i1;
  const double flux1 = m1 * m1 * A.A1 * i0 - C / R + B.B1 * (m1 * ilm - (l / R) * il);
  const double taxis = B.B1 * (l / R) * il + (l / R) * C;
  return {C, flux1, taxis};
}

}  // namespace

GrowthRates growth_rates(double R, const ModelParams& p, int l, double R_inf) {
  const auto pc = pieces(R, p, l, R_inf);
  const double d = p.d;
  GrowthRates g;
  g.dR_dt = pc.C * p.P - p.A * R / d;
  g.delta_rate = -p.Ginv * l * (l * l - 1.0) / (R * R * R) + (l - 1.0) * p.A / d + p.P * pc.flux1 -
                 (p.P - p.chi) * pc.taxis;
  g.shape_rate = -p.Ginv * l * (l * l - 1.0) / (R * R * R) + l * p.A / d + p.P * (pc.flux1 - pc.C / R) -
                 (p.P - p.chi) * pc.taxis;
  return g;
}

double critical_apoptosis(double R, const ModelParams& p, int l, double R_inf) {
  const auto pc = pieces(R, p, l, R_inf);
  const double d = p.d;
  return p.Ginv * d * (l * l - 1.0) / (R * R * R) - p.P * (d / l) * (pc.flux1 - pc.C / R) +
         (p.P - p.chi) * (d / l) * pc.taxis;
}

RadialTraces radial_traces(double R, double R_inf, const ModelParams& p) {
  const auto A = radial_coefficients(R, R_inf, p);
  const double m1 = p.mu1, m2 = p.mu2(), xi = m2 * R_inf;
  return {A.A1 * sf::bessel_i(0, m1 * R), m1 * A.A1 * sf::bessel_i(1, m1 * R),
          m2 * (A.A2 * sf::bessel_i(1, xi) - A.A3 * sf::bessel_k(1, xi))};
}

FirstOrderTraces first_order_traces(double R, double R_inf, const ModelParams& p, int l) {
  const auto A = radial_coefficients(R, R_inf, p);
  const auto B = perturbation_coefficients(R, R_inf, p, l);
  const auto pc = pieces(R, p, l, R_inf);
  const double m1 = p.mu1, m2 = p.mu2(), x1 = m1 * R, xi = m2 * R_inf;
  FirstOrderTraces f;
  f.sigma = m1 * A.A1 * sf::bessel_i(1, x1) + B.B1 * sf::bessel_i(l, x1);
  f.flux = pc.flux1;
  f.dp_dn = l * (p.Ginv * (l * l - 1.0) / (R * R * R) - p.A / p.d + (p.P - p.chi) * f.sigma / R);
  f.far_flux = m2 * (B.B2 * sf::bessel_i_prime(l, xi) + B.B3 * sf::bessel_k_prime(l, xi));
  return f;
}

Trajectory integrate_linear_ode(const LinearModeState& s0, const ModelParams& p, double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("integrate_linear_ode: dt must be positive");
  Trajectory tr;
  double R = s0.R, delta = s0.delta, t = 0.0;
  tr.points.push_back({t, R, delta});
  auto rhs = [&](double r, double del, double& dr, double& dd) {
    const auto g = growth_rates(r, p, s0.l, s0.R_inf);
    dr = g.dR_dt;
    dd = g.delta_rate * del;
  };
  const long steps = std::lround(std::ceil(t_end / dt - 1e-9));
  for (long k = 0; k < steps; ++k) {
    const double h = std::min(dt, t_end - t);
    try {
      double r1, d1, r2, d2, r3, d3, r4, d4;
      rhs(R, delta, r1, d1);
      rhs(R + 0.5 * h * r1, delta + 0.5 * h * d1, r2, d2);
      rhs(R + 0.5 * h * r2, delta + 0.5 * h * d2, r3, d3);
      rhs(R + h * r3, delta + h * d3, r4, d4);
      R += h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
      delta += h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
    } catch (const DomainError& e) {
      tr.truncated = true;
      tr.status = std::string("stopped: ") + e.what();
      return tr;
    }
    t += h;
    if (!(R > 0.0) || !(R < s0.R_inf)) {
      tr.truncated = true;
      tr.status = "stopped: R left (0, R_inf)";
      return tr;
    }
    tr.points.push_back({t, R, delta});
  }
  return tr;
}

}  // namespace tumorbim::linear_theory
