#include <complex>

#include <boost/math/quadrature/gauss.hpp>

#include "tumorbim/assembly.hpp"
#include "tumorbim/spectral.hpp"

namespace tumorbim::assembly {

namespace {

constexpr int kGradingLevels = 50;

struct Rule {
  std::vector<double> u;
  std::vector<double> w;
};

void add_panel(Rule& r, double a, double b) {
  using GL = boost::math::quadrature::gauss<double, 16>;
  const auto& x = GL::abscissa();
  const auto& wt = GL::weights();
  const double c = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t k = 0; k < x.size(); ++k) {
    r.u.push_back(c + half * x[k]);
    r.w.push_back(half * wt[k]);
    if (x[k] != 0.0) {
      r.u.push_back(c - half * x[k]);
      r.w.push_back(half * wt[k]);
    }
  }
}

// Signed offsets u in (-pi, pi), graded geometrically toward u = 0 where the
// kernel has its logarithmic singularity.
Rule offset_rule(std::size_t n) {
  const double pi = std::numbers::pi;
  const double h = 2.0 * pi / static_cast<double>(n);
  Rule r;
  double lo = h * std::ldexp(1.0, -kGradingLevels);
  for (int lvl = kGradingLevels; lvl > 0; --lvl) {
    add_panel(r, lo, 2.0 * lo);
    add_panel(r, -2.0 * lo, -lo);
    lo *= 2.0;
  }
  // lo == h now; panels of width ~2h out to +-pi
  const std::size_t panels = std::max<std::size_t>(1, n / 4);
  const double width = (pi - h) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    add_panel(r, h + p * width, h + (p + 1) * width);
    add_panel(r, -h - (p + 1) * width, -h - p * width);
  }
  return r;
}

}  // namespace

LayerBlocks helmholtz_self_product(const Boundary& b, double mu) {
  const std::size_t n = b.size();
  const Rule rule = offset_rule(n);
  const std::size_t nq = rule.u.size();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);

  const auto& g = b.geom;
  const auto cx = spectral::forward(b.curve.x), cy = spectral::forward(b.curve.y);
  const auto cxa = spectral::forward(g.x_alpha), cya = spectral::forward(g.y_alpha);

  // kernel values K(alpha_i, alpha_i + u_q) weighted by w_q
  Matrix ks(n, nq), kd(n, nq);
  // cardinal values l(u_q - m h)
  Matrix card(nq, n);

#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(nq); ++qi) {
    const double u = rule.u[qi];
    // spectral multipliers e^{iku} and e^{iku} - 1 (the latter without cancellation)
    spectral::Spectrum shift(n), diff(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double k = spectral::wavenumber(j, n);
      if (j == n / 2) {
        const double sn = std::sin(0.25 * static_cast<double>(n) * u);
        shift[j] = std::cos(0.5 * static_cast<double>(n) * u);
        diff[j] = -2.0 * sn * sn;
      } else {
        shift[j] = std::polar(1.0, k * u);
        diff[j] = std::complex<double>(0.0, 2.0 * std::sin(0.5 * k * u)) * std::polar(1.0, 0.5 * k * u);
      }
    }
    auto apply = [&](const spectral::Spectrum& spec, const spectral::Spectrum& mult) {
      spectral::Spectrum s = spec;
      for (std::size_t j = 0; j < n; ++j) s[j] *= mult[j];
      return spectral::inverse(s);
    };
    const auto ddx = apply(cx, diff), ddy = apply(cy, diff);  // x(a + u) - x(a)
    const auto xas = apply(cxa, shift), yas = apply(cya, shift);
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = -ddx[i], dy = -ddy[i];
      const double r = std::hypot(dx, dy);
      const auto bes = specfun::bessel_ik01(mu * r);
      const double speed = std::hypot(xas[i], yas[i]);
      ks(i, qi) = rule.w[qi] * kernels::kInvTwoPi * bes.k0 * speed;
      // n' s' = (y_a', -x_a')
      kd(i, qi) = rule.w[qi] * kernels::kInvTwoPi * mu * bes.k1 * (dx * yas[i] - dy * xas[i]) / r;
    }
    for (std::size_t m = 0; m < n; ++m) card(qi, m) = spectral::cardinal(u - static_cast<double>(m) * h, n);
  }

  const Matrix bs = ks * card;
  const Matrix bd = kd * card;
  LayerBlocks out{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t m = (j + n - i) % n;
      out.single(i, j) = bs(i, m);
      out.dbl(i, j) = bd(i, m);
    }
  }
  return out;
}

}  // namespace tumorbim::assembly
