#include "tumorbim/specfun.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "tumorbim/errors.hpp"

namespace tumorbim::specfun {
namespace {

constexpr double kEps = 1e-17;
constexpr double kAsymptoticStart = 40.0;
constexpr double kLogSeriesLimit = 2.0;
const double kLogDblMax = std::log(DBL_MAX);

void check_order(int n) {
  if (n < 0) throw DomainError("modified Bessel function: negative order " + std::to_string(n));
}

// Hankel expansion sum_k (+-1)^k a_k(n) / x^k; sign = -1 for I, +1 for K.
double hankel_sum(int n, double x, double sign) {
  const double mu = 4.0 * n * n;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= sign * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > std::abs(prev)) break;  // asymptotic series started to diverge
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
    prev = term;
  }
  return sum;
}

// Ascending series for I_n(x), optionally scaled by exp(-x).
double series_i(int n, double x, bool scaled) {
  const double q = 0.25 * x * x;
  double t;
  if (n == 0 && !scaled) {
    t = 1.0;
  } else {
    const double log_t0 = n * std::log(0.5 * x) - std::lgamma(n + 1.0) - (scaled ? x : 0.0);
    t = std::exp(log_t0);
  }
  double sum = t;
  for (int k = 1; k < 2000; ++k) {
    t *= q / (static_cast<double>(k) * (k + n));
    sum += t;
    if (t < kEps * sum) break;
  }
  return sum;
}

bool use_asymptotic_i(int n, double x) { return x >= kAsymptoticStart && x >= 4.0 * n * n; }

// K_0 and K_1 by the logarithmic series (small x). Also returns I_0, I_1.
void log_series_01(double x, double& i0, double& i1, double& k0, double& k1) {
  const double q = 0.25 * x * x;
  double t = 1.0;  // q^k / (k!)^2
  double harmonic = 0.0;
  double s_i0 = 0.0, s_i1 = 0.0, s_k0 = 0.0, s_k1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double kp1 = k + 1.0;
    const double harmonic_next = harmonic + 1.0 / kp1;
    s_i0 += t;
    s_i1 += t / kp1;
    s_k0 += harmonic * t;
    s_k1 += (harmonic + harmonic_next) * t / kp1;
    t *= q / (kp1 * kp1);
    harmonic = harmonic_next;
    if (t < kEps * s_i0) break;
  }
  i0 = s_i0;
  i1 = 0.5 * x * s_i1;
  const double lg = std::log(0.5 * x) + kEulerGamma;
  k0 = -lg * i0 + s_k0;
  k1 = 1.0 / x + lg * i1 - 0.25 * x * s_k1;
}

// Steed's continued fraction (Temme's CF2) for K_0, K_1; accurate for x >= 2.
void continued_fraction_01(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 1000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

void asymptotic_k01(double x, double& k0, double& k1) {
  const double pre = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
  k0 = pre * hankel_sum(0, x, 1.0);
  k1 = pre * hankel_sum(1, x, 1.0);
}

double asymptotic_i(int n, double x) {
  const double log_pre = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
  const double sum = hankel_sum(n, x, -1.0);
  if (log_pre + std::log(sum) > kLogDblMax) {
    throw OverflowError("bessel_i: I_" + std::to_string(n) + "(" + std::to_string(x) + ") overflows");
  }
  return std::exp(log_pre) * sum;
}

void k01(double x, double& k0, double& k1) {
  if (x <= kLogSeriesLimit) {
    double i0, i1;
    log_series_01(x, i0, i1, k0, k1);
  } else if (x < kAsymptoticStart) {
    continued_fraction_01(x, k0, k1);
  } else {
    asymptotic_k01(x, k0, k1);
  }
}

}  // namespace

double bessel_i(int n, double x) {
  check_order(n);
  if (!(x >= 0.0)) throw DomainError("bessel_i: negative or NaN argument");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (use_asymptotic_i(n, x)) return asymptotic_i(n, x);
  if (x <= kAsymptoticStart) return series_i(n, x, false);
  const double scaled = series_i(n, x, true);
  if (std::log(scaled) + x > kLogDblMax) {
    throw OverflowError("bessel_i: I_" + std::to_string(n) + "(" + std::to_string(x) + ") overflows");
  }
  return scaled * std::exp(x);
}

double bessel_k(int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  double km, k;
  k01(x, km, k);
  if (n == 0) return km;
  for (int j = 1; j < n; ++j) {
    const double next = km + (2.0 * j / x) * k;
    km = k;
    k = next;
  }
  return k;
}

double bessel_i_prime(int n, double x) {
  check_order(n);
  if (n == 0) return bessel_i(1, x);
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  return bessel_i(n - 1, x) - (n / x) * bessel_i(n, x);
}

double bessel_k_prime(int n, double x) {
  check_order(n);
  if (n == 0) return -bessel_k(1, x);
  return -bessel_k(n - 1, x) - (n / x) * bessel_k(n, x);
}

BesselPair bessel_pair(int n, double x) { return {n, x, bessel_i(n, x), bessel_k(n, x)}; }

void bessel_i01(double x, double& i0, double& i1) {
  if (x >= kAsymptoticStart) {
    i0 = asymptotic_i(0, x);
    i1 = asymptotic_i(1, x);
    return;
  }
  const double q = 0.25 * x * x;
  double t = 1.0;
  double s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double kp1 = k + 1.0;
    s0 += t;
    s1 += t / kp1;
    t *= q / (kp1 * kp1);
    if (t < kEps * s0) break;
  }
  i0 = s0;
  i1 = 0.5 * x * s1;
}

BesselIK01 bessel_ik01(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_ik01: argument must be positive");
  BesselIK01 r{};
  if (x <= kLogSeriesLimit) {
    log_series_01(x, r.i0, r.i1, r.k0, r.k1);
  } else {
    bessel_i01(x, r.i0, r.i1);
    if (x < kAsymptoticStart) {
      continued_fraction_01(x, r.k0, r.k1);
    } else {
      asymptotic_k01(x, r.k0, r.k1);
    }
  }
  return r;
}

}  // namespace tumorbim::specfun
