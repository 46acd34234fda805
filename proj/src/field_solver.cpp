#include "tumorbim/field_solver.hpp"

#include <cmath>

#include "tumorbim/errors.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim {

double ModelParams::Lambda() const { return std::sqrt(D / lambda); }
double ModelParams::mu2() const { return std::sqrt(lambda / D); }

void ModelParams::validate() const {
  if (!(D > 0.0)) throw ConfigError("params.D", "must be positive");
  if (!(lambda > 0.0)) throw ConfigError("params.lambda", "must be positive (use a small value such as 0.001 for lambda ~ 0)");
  if (!(mu1 > 0.0)) throw ConfigError("params.mu1", "must be positive");
  if (d != 2) throw ConfigError("params.d", "only d = 2 is supported");
}

namespace {

using Vector = Eigen::VectorXd;

Vector to_eigen(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), v.size()); }
std::vector<double> to_std(const Eigen::Ref<const Vector>& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

FieldSolver::FieldSolver(MarkerCurve farfield, ModelParams params, linear_solve::Options opts)
    : params_(params), opts_(opts), far_(std::move(farfield)) {
  params_.validate();
  const double mu2 = params_.mu2();
  far_product_ = assembly::prefers_product_integration(far_, mu2);
  far_self_ = far_product_ ? assembly::helmholtz_self_product(far_, mu2)
                           : assembly::helmholtz_self(far_, mu2, rule(far_.size()));
  far_rhs_ = far_self_.dbl.rowwise().sum();
  far_rhs_.array() += 0.5;
}

const kernels::KressRule& FieldSolver::rule(std::size_t n) {
  auto it = rules_.find(n);
  if (it == rules_.end()) it = rules_.emplace(n, kernels::kress_weights(static_cast<int>(n / 2))).first;
  return it->second;
}

NutrientTraces FieldSolver::solve_nutrient(const kernels::Boundary& tumor) {
  const std::size_t n = tumor.size(), m = far_.size();
  const double mu1 = params_.mu1, mu2 = params_.mu2();
  const double inv_d = 1.0 / params_.D;
  const auto& kr = rule(n);

  const auto in1 = assembly::helmholtz_self(tumor, mu1, kr);
  const auto in2 = assembly::helmholtz_self(tumor, mu2, kr);
  const auto tumor_from_far = assembly::helmholtz_cross(tumor, far_, mu2);
  const auto far_from_tumor = assembly::helmholtz_cross(far_, tumor, mu2);

  const std::size_t size = 2 * n + m;
  linear_solve::Matrix a = linear_solve::Matrix::Zero(size, size);
  Vector b = Vector::Zero(size);

  // interior: 1/2 sigma + D1 sigma - S1 f = 0
  a.block(0, 0, n, n) = in1.dbl;
  a.block(0, 0, n, n).diagonal().array() += 0.5;
  a.block(0, n, n, n) = -in1.single;

  // exterior, targets on the tumor
  a.block(n, 0, n, n) = in2.dbl;
  a.block(n, 0, n, n).diagonal().array() -= 0.5;
  a.block(n, n, n, n) = -inv_d * in2.single;
  a.block(n, 2 * n, n, m) = tumor_from_far.single;
  b.segment(n, n) = tumor_from_far.dbl.rowwise().sum();

  // exterior, targets on the far field
  a.block(2 * n, 0, m, n) = far_from_tumor.dbl;
  a.block(2 * n, n, m, n) = -inv_d * far_from_tumor.single;
  a.block(2 * n, 2 * n, m, m) = far_self_.single;
  b.segment(2 * n, m) = far_rhs_;

  const auto res = linear_solve::solve(a, b, opts_, warm_nutrient_);
  warm_nutrient_ = res.x;

  NutrientTraces out;
  out.sigma = to_std(res.x.segment(0, n));
  out.dsigma_dn = to_std(res.x.segment(n, n));
  out.far_flux = to_std(res.x.segment(2 * n, m));
  out.iterations = res.iterations;
  out.residual = res.residual;
  return out;
}

std::vector<double> FieldSolver::solve_pressure_density(const kernels::Boundary& tumor,
                                                        const std::vector<double>& sigma, int* iterations) {
  const std::size_t n = tumor.size();
  linear_solve::Matrix a = assembly::laplace_double(tumor);
  a.diagonal().array() += 0.5;
  Vector b(n);
  const auto& p = params_;
  for (std::size_t j = 0; j < n; ++j) {
    const double xx = tumor.curve.x[j] * tumor.curve.x[j] + tumor.curve.y[j] * tumor.curve.y[j];
    b[j] = p.Ginv * tumor.geom.kappa[j] + (p.P - p.chi) * sigma[j] - p.A * xx / (2.0 * p.d);
  }
  const auto res = linear_solve::solve(a, b, opts_, warm_pressure_);
  warm_pressure_ = res.x;
  if (iterations) *iterations = res.iterations;
  return to_std(res.x);
}

std::vector<double> FieldSolver::pressure_normal_derivative(const kernels::Boundary& tumor,
                                                            const std::vector<double>& eta) {
  const std::size_t n = tumor.size();
  auto eta_s = spectral::derivative(eta, 1);
  for (std::size_t j = 0; j < n; ++j) eta_s[j] /= tumor.geom.speed[j];
  const auto s = assembly::laplace_single_self(tumor, rule(n));
  const Vector phi = s * to_eigen(eta_s);
  auto out = spectral::derivative(to_std(phi), 1);
  for (std::size_t j = 0; j < n; ++j) out[j] /= tumor.geom.speed[j];
  return out;
}

std::vector<double> FieldSolver::normal_velocity(const kernels::Boundary& tumor, const std::vector<double>& dsigma_dn,
                                                 const std::vector<double>& dp_dn) const {
  const std::size_t n = tumor.size();
  const auto& g = tumor.geom;
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double nx = g.normal_x[j] * tumor.curve.x[j] + g.normal_y[j] * tumor.curve.y[j];
    v[j] = -dp_dn[j] + params_.P * dsigma_dn[j] - params_.A * nx / params_.d;
  }
  return v;
}

BoundaryFields FieldSolver::solve(const kernels::Boundary& tumor) {
  BoundaryFields f;
  auto nut = solve_nutrient(tumor);
  int p_it = 0;
  f.eta = solve_pressure_density(tumor, nut.sigma, &p_it);
  f.dp_dn = pressure_normal_derivative(tumor, f.eta);
  f.V = normal_velocity(tumor, nut.dsigma_dn, f.dp_dn);
  f.sigma = std::move(nut.sigma);
  f.dsigma_dn = std::move(nut.dsigma_dn);
  f.far_flux = std::move(nut.far_flux);
  f.iterations = nut.iterations + p_it;
  return f;
}

double FieldSolver::probe_sigma(const kernels::Boundary& tumor, const NutrientTraces& t, Vec2 point) const {
  // layer potentials at an off-curve point, trapezoid rule
  auto layers = [&](const kernels::Boundary& b, double mu, const std::vector<double>& dens_d,
                    const std::vector<double>& dens_s, double scale_s) {
    const std::size_t n = b.size();
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    double dl = 0.0, sl = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = point[0] - b.curve.x[j], dy = point[1] - b.curve.y[j];
      const double r = std::hypot(dx, dy);
      const auto bes = specfun::bessel_ik01(mu * r);
      const auto& g = b.geom;
      const double dg = mu * bes.k1 * (dx * g.normal_x[j] + dy * g.normal_y[j]) / r;
      dl += dg * dens_d[j] * g.speed[j];
      sl += bes.k0 * dens_s[j] * g.speed[j];
    }
    return kernels::kInvTwoPi * h * (dl - scale_s * sl);  // D[phi] - scale S[psi]
  };
  if (curve::contains(tumor.curve, point)) {
    // -u = D1 sigma - S1 f
    return -layers(tumor, params_.mu1, t.sigma, t.dsigma_dn, 1.0);
  }
  // -u = (D_inf[1] - S_inf[q]) - (D_G[sigma] - S_G[f/D])
  const std::vector<double> ones(far_.size(), 1.0);
  const double mu2 = params_.mu2();
  return -layers(far_, mu2, ones, t.far_flux, 1.0) + layers(tumor, mu2, t.sigma, t.dsigma_dn, 1.0 / params_.D);
}

NutrientTraces solve_nutrient(const MarkerCurve& tumor, const MarkerCurve& farfield, const ModelParams& params,
                              double tol) {
  linear_solve::Options o;
  o.tol = tol;
  FieldSolver solver(farfield, params, o);
  return solver.solve_nutrient(kernels::Boundary(tumor));
}

}  // namespace tumorbim
