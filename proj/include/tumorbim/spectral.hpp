#pragma once

#include <complex>
#include <span>
#include <vector>

// FFT-based operations on real 2*pi-periodic samples at alpha_j = 2*pi*j/N.
// Spectra use the unnormalised DFT convention: c_k = sum_j f_j exp(-i k alpha_j).
namespace tumorbim::spectral {

using Spectrum = std::vector<std::complex<double>>;

bool is_power_of_two(std::size_t n);

/// Signed wavenumber of DFT index j (Nyquist reported as +N/2).
int wavenumber(std::size_t j, std::size_t n);

Spectrum forward(std::span<const double> samples);
std::vector<double> inverse(const Spectrum& spectrum);

/// d^order f / d alpha^order. The Nyquist mode is dropped for odd orders.
std::vector<double> derivative(std::span<const double> samples, int order);

/// Periodic antiderivative of f - mean(f), normalised to vanish at alpha = 0.
std::vector<double> antiderivative(std::span<const double> samples);

double mean(std::span<const double> samples);

/// Fourier multiplier -i sgn(k); zero and Nyquist modes map to zero.
std::vector<double> hilbert(std::span<const double> samples);

/// Evaluates the trigonometric interpolant of `samples` at arbitrary points.
std::vector<double> interpolate(std::span<const double> samples, std::span<const double> points);

/// Trigonometric interpolant sampled on a finer (or equal) uniform grid of m points.
std::vector<double> resample(std::span<const double> samples, std::size_t m);

/// Values of the interpolant at alpha_j + shift for all j (one FFT pair).
std::vector<double> shifted(std::span<const double> samples, double shift);

/// Trigonometric interpolant kept in coefficient form for repeated point evaluation.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(std::span<const double> samples);

  double operator()(double alpha) const;
  /// First derivative of the interpolant.
  double derivative(double alpha) const;

 private:
  std::size_t n_;
  std::vector<double> a_;  // cosine coefficients, k = 0..N/2
  std::vector<double> b_;  // sine coefficients
};

/// Periodic cardinal function of the N-point trigonometric interpolant (value 1 at t = 0).
double cardinal(double t, std::size_t n);

}  // namespace tumorbim::spectral
