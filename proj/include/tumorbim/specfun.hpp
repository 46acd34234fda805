#pragma once

// Modified Bessel functions I_n and K_n of integer order and real argument.
//
// Evaluation routes:
//   I_n : ascending power series for moderate x, Hankel asymptotic series
//         for large x (x >= 40 and x >= 4 n^2), exponentially scaled series
//         otherwise so that intermediate terms never overflow.
//   K_0, K_1 : logarithmic series for x <= 2, Steed/Temme continued
//         fraction for 2 < x < 40, Hankel asymptotic series beyond.
//   K_n : forward recurrence from K_0, K_1 (stable in that direction).
//
// All functions are pure and thread-safe.

namespace tumorbim::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct BesselPair {
  int order = 0;
  double argument = 0.0;
  double i_value = 0.0;
  double k_value = 0.0;
};

/// I_n(x). x = 0 returns the limit (1 for n = 0, else 0).
/// Throws DomainError for x < 0 or n < 0, OverflowError if I_n(x) exceeds DBL_MAX.
double bessel_i(int n, double x);

/// K_n(x) for x > 0. Throws DomainError for x <= 0 or n < 0.
double bessel_k(int n, double x);

/// I_n'(x) = I_{n-1}(x) - (n/x) I_n(x)  (I_0' = I_1).
double bessel_i_prime(int n, double x);

/// K_n'(x) = -K_{n-1}(x) - (n/x) K_n(x)  (K_0' = -K_1).
double bessel_k_prime(int n, double x);

BesselPair bessel_pair(int n, double x);

/// I_0, I_1, K_0, K_1 at one argument; the hot path of kernel assembly.
struct BesselIK01 {
  double i0;
  double i1;
  double k0;
  double k1;
};

BesselIK01 bessel_ik01(double x);

/// I_0 and I_1 only (x >= 0); cheaper when K is not needed.
void bessel_i01(double x, double& i0, double& i1);

}  // namespace tumorbim::specfun
