#pragma once

#include <map>
#include <memory>
#include <vector>

#include "tumorbim/assembly.hpp"
#include "tumorbim/linear_solve.hpp"

namespace tumorbim {

struct ModelParams {
  double D = 1.0;       // D2 / D1
  double lambda = 0.01; // uptake ratio lambda2 / lambda1
  double P = 0.0;       // proliferation
  double A = 0.0;       // apoptosis
  double chi = 0.0;     // chemotaxis
  double Ginv = 0.0;    // adhesion (inverse)
  double mu1 = 1.0;
  int d = 2;

  double Lambda() const;  // sqrt(D / lambda)
  double mu2() const;     // 1 / Lambda
  /// Throws ConfigError on D <= 0 or lambda <= 0.
  void validate() const;
};

struct NutrientTraces {
  std::vector<double> sigma;
  std::vector<double> dsigma_dn;
  std::vector<double> far_flux;
  int iterations = 0;
  double residual = 0.0;
};

struct BoundaryFields {
  std::vector<double> sigma;
  std::vector<double> dsigma_dn;
  std::vector<double> far_flux;
  std::vector<double> eta;
  std::vector<double> dp_dn;
  std::vector<double> V;
  int iterations = 0;  // nutrient + pressure solver iterations
};

/// Nystrom solver for the nutrient and pressure boundary integral equations.
/// Holds the fixed far-field boundary and its precomputed self-interaction,
/// plus a warm start for the next solve. One instance per simulation.
class FieldSolver {
 public:
  FieldSolver(MarkerCurve farfield, ModelParams params, linear_solve::Options opts = {});

  const ModelParams& params() const { return params_; }
  const kernels::Boundary& farfield() const { return far_; }
  bool farfield_uses_product_integration() const { return far_product_; }

  /// Unknowns sigma, d sigma1/dn on the tumor and d sigma2/dn on the far field.
  NutrientTraces solve_nutrient(const kernels::Boundary& tumor);

  /// Dipole density of the modified pressure.
  std::vector<double> solve_pressure_density(const kernels::Boundary& tumor, const std::vector<double>& sigma,
                                             int* iterations = nullptr);

  /// dp/dn = d/ds S[d eta / ds'].
  std::vector<double> pressure_normal_derivative(const kernels::Boundary& tumor, const std::vector<double>& eta);

  /// V = -dp/dn + P dsigma/dn - (A/d) n.x
  std::vector<double> normal_velocity(const kernels::Boundary& tumor, const std::vector<double>& dsigma_dn,
                                      const std::vector<double>& dp_dn) const;

  /// Full pipeline: nutrient, then pressure, then V.
  BoundaryFields solve(const kernels::Boundary& tumor);

  /// sigma at an off-boundary point from the layer representation (trapezoid rule;
  /// only accurate away from both curves). Diagnostic.
  double probe_sigma(const kernels::Boundary& tumor, const NutrientTraces& traces, Vec2 point) const;

 private:
  const kernels::KressRule& rule(std::size_t n);

  ModelParams params_;
  linear_solve::Options opts_;
  kernels::Boundary far_;
  bool far_product_ = false;
  assembly::LayerBlocks far_self_;
  Eigen::VectorXd far_rhs_;  // 1/2 + D_inf,inf [1]
  std::map<std::size_t, kernels::KressRule> rules_;
  Eigen::VectorXd warm_nutrient_;
  Eigen::VectorXd warm_pressure_;
};

/// One-shot wrappers.
NutrientTraces solve_nutrient(const MarkerCurve& tumor, const MarkerCurve& farfield, const ModelParams& params,
                              double tol);

}  // namespace tumorbim
