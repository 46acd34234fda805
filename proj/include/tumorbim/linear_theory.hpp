#pragma once

#include <string>
#include <vector>

#include "tumorbim/field_solver.hpp"

// Linear stability of a perturbed circular tumor r = R + delta cos(l theta)
// inside a circular far-field boundary of radius R_inf.
//
// Unperturbed nutrient: sigma1 = A1 I0(mu1 r), sigma2 = A2 I0(mu2 r) + A3 K0(mu2 r).
// First-order correction: (B1 I_l(mu1 r)) and (B2 I_l(mu2 r) + B3 K_l(mu2 r)) times delta cos(l theta).
// Coefficients come from the 3x3 boundary-condition systems.
namespace tumorbim::linear_theory {

struct RadialCoefficients {
  double A1, A2, A3;
};

struct PerturbationCoefficients {
  double B1, B2, B3;
};

RadialCoefficients radial_coefficients(double R, double R_inf, const ModelParams& p);
PerturbationCoefficients perturbation_coefficients(double R, double R_inf, const ModelParams& p, int l);

struct GrowthRates {
  double dR_dt;       // C P - A R / d
  double delta_rate;  // (1/delta) d delta / dt
  double shape_rate;  // (delta/R)^{-1} d(delta/R)/dt
};

GrowthRates growth_rates(double R, const ModelParams& p, int l, double R_inf);

double critical_apoptosis(double R, const ModelParams& p, int l, double R_inf);

/// Boundary traces of the unperturbed solution.
struct RadialTraces {
  double sigma;      // sigma on Gamma
  double flux;       // d sigma1/dn on Gamma
  double far_flux;   // d sigma2/dn on Gamma_inf
};

RadialTraces radial_traces(double R, double R_inf, const ModelParams& p);

/// Coefficients of delta cos(l theta) in the boundary traces of the perturbed state,
/// evaluated on the perturbed interface.
struct FirstOrderTraces {
  double sigma;
  double flux;
  double dp_dn;
  double far_flux;  // d sigma2/dn on Gamma_inf
};

FirstOrderTraces first_order_traces(double R, double R_inf, const ModelParams& p, int l);

struct LinearModeState {
  double R = 2.0;
  double delta = 0.1;
  int l = 2;
  double R_inf = 13.0;
};

struct TrajectoryPoint {
  double t, R, delta;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool truncated = false;
  std::string status = "ok";
};

/// Classical RK4 on (R, delta) with coefficients re-evaluated at each stage.
/// Stops (truncated) if R reaches R_inf or leaves (0, R_inf).
Trajectory integrate_linear_ode(const LinearModeState& s0, const ModelParams& p, double t_end, double dt);

}  // namespace tumorbim::linear_theory
