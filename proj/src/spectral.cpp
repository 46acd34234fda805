#include "tumorbim/spectral.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "tumorbim/errors.hpp"

namespace tumorbim::spectral {
namespace {

// kissfft keeps per-size twiddle caches; one instance per thread.
Eigen::FFT<double>& fft() {
  thread_local Eigen::FFT<double> instance;
  return instance;
}

void require_size(std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw DomainError("spectral: sample count must be a power of two >= 2, got " + std::to_string(n));
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int wavenumber(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n);
}

Spectrum forward(std::span<const double> samples) {
  require_size(samples.size());
  std::vector<double> in(samples.begin(), samples.end());
  Spectrum out;
  fft().fwd(out, in);
  return out;
}

std::vector<double> inverse(const Spectrum& spectrum) {
  std::vector<double> out;
  Spectrum in = spectrum;
  fft().inv(out, in);
  return out;
}

std::vector<double> derivative(std::span<const double> samples, int order) {
  const std::size_t n = samples.size();
  Spectrum c = forward(samples);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const int k = wavenumber(j, n);
    if (j == n / 2 && order % 2 == 1) {
      c[j] = 0.0;
      continue;
    }
    c[j] *= std::pow(i * static_cast<double>(k), order);
  }
  return inverse(c);
}

double mean(std::span<const double> samples) {
  double s = 0.0;
  for (double v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

std::vector<double> antiderivative(std::span<const double> samples) {
  const std::size_t n = samples.size();
  Spectrum c = forward(samples);
  const std::complex<double> i(0.0, 1.0);
  c[0] = 0.0;
  c[n / 2] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    if (j == n / 2) continue;
    c[j] /= i * static_cast<double>(wavenumber(j, n));
  }
  std::vector<double> f = inverse(c);
  const double f0 = f[0];
  for (double& v : f) v -= f0;
  return f;
}

std::vector<double> hilbert(std::span<const double> samples) {
  const std::size_t n = samples.size();
  Spectrum c = forward(samples);
  const std::complex<double> minus_i(0.0, -1.0);
  c[0] = 0.0;
  c[n / 2] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    if (j == n / 2) continue;
    c[j] *= wavenumber(j, n) > 0 ? minus_i : -minus_i;
  }
  return inverse(c);
}

std::vector<double> interpolate(std::span<const double> samples, std::span<const double> points) {
  const TrigInterpolant f(samples);
  std::vector<double> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = f(points[p]);
  return out;
}

std::vector<double> resample(std::span<const double> samples, std::size_t m) {
  const std::size_t n = samples.size();
  require_size(m);
  if (m < n) throw DomainError("spectral::resample: target grid coarser than source");
  const Spectrum c = forward(samples);
  Spectrum d(m, 0.0);
  const double scale = static_cast<double>(m) / static_cast<double>(n);
  for (std::size_t j = 0; j < n / 2; ++j) d[j] = c[j] * scale;
  for (std::size_t j = n / 2 + 1; j < n; ++j) d[m - n + j] = c[j] * scale;
  if (m == n) {
    d[n / 2] = c[n / 2] * scale;
  } else {
    d[n / 2] = 0.5 * c[n / 2] * scale;
    d[m - n / 2] = 0.5 * c[n / 2] * scale;
  }
  return inverse(d);
}

std::vector<double> shifted(std::span<const double> samples, double shift) {
  const std::size_t n = samples.size();
  Spectrum c = forward(samples);
  for (std::size_t j = 0; j < n; ++j) {
    const int k = wavenumber(j, n);
    if (j == n / 2) {
      c[j] *= std::cos(0.5 * static_cast<double>(n) * shift);
    } else {
      c[j] *= std::polar(1.0, k * shift);
    }
  }
  return inverse(c);
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples) : n_(samples.size()) {
  const Spectrum c = forward(samples);
  const double inv_n = 1.0 / static_cast<double>(n_);
  a_.assign(n_ / 2 + 1, 0.0);
  b_.assign(n_ / 2 + 1, 0.0);
  a_[0] = c[0].real() * inv_n;
  for (std::size_t k = 1; k < n_ / 2; ++k) {
    a_[k] = 2.0 * c[k].real() * inv_n;
    b_[k] = -2.0 * c[k].imag() * inv_n;
  }
  a_[n_ / 2] = c[n_ / 2].real() * inv_n;
}

double TrigInterpolant::operator()(double alpha) const {
  // Clenshaw-free direct sum using the angle-addition recurrence
  const double c1 = std::cos(alpha), s1 = std::sin(alpha);
  double ck = 1.0, sk = 0.0;
  double v = a_[0];
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    v += a_[k] * ck + b_[k] * sk;
  }
  return v;
}

double TrigInterpolant::derivative(double alpha) const {
  const double c1 = std::cos(alpha), s1 = std::sin(alpha);
  double ck = 1.0, sk = 0.0;
  double v = 0.0;
  const std::size_t last = a_.size() - 1;  // Nyquist term has no real derivative
  for (std::size_t k = 1; k < last; ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    v += static_cast<double>(k) * (b_[k] * ck - a_[k] * sk);
  }
  return v;
}

double cardinal(double t, std::size_t n) {
  const double half = 0.5 * t;
  const double s = std::sin(half);
  if (std::abs(s) < 1e-14) {
    // t is a multiple of 2*pi
    return 1.0;
  }
  return std::sin(0.5 * static_cast<double>(n) * t) * std::cos(half) / (s * static_cast<double>(n));
}

}  // namespace tumorbim::spectral
