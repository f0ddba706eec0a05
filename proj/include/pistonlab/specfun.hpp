#pragma once

// Double-precision special functions used throughout the lab: Gamma,
// Riemann zeta (with its reflection formula) and the modified Bessel
// functions K0, K1 and K1'.  All functions are pure and thread-safe.

namespace pistonlab::specfun {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// Values below this are reported as exact zero with the underflow flag set.
inline constexpr double kUnderflowThreshold = 1e-300;

// Gamma function for real x.  Throws InputError at the poles x = 0, -1, -2, ...
// and for |x| > 170 (beyond double range).
double gamma(double x);

// Riemann zeta for real s != 1.  s > 0 uses a direct partial sum with an
// Euler-Maclaurin tail; s < 0 goes through the reflection formula.
double riemann_zeta(double s);

// Functional equation in completed form:
//   Gamma(s/2) pi^(-s/2) zeta(s) = Gamma((1-s)/2) pi^((s-1)/2) zeta(1-s).
// Given zeta(1-s), returns zeta(s).  When s is a nonpositive even integer the
// left Gamma has a pole and the result is the trivial zero.
double zeta_from_reflection(double s, double zeta_one_minus_s);

struct BesselValue {
  double value;
  bool underflow;  // true when the true value is below kUnderflowThreshold
};

// K_order(x) for order in {0, 1} and x > 0.
BesselValue bessel_k_checked(int order, double x);
double bessel_k(int order, double x);

// exp(x) K_order(x); never underflows.
double bessel_k_scaled(int order, double x);

// dK1/dx = -K0(x) - K1(x)/x.
double bessel_k1_prime(double x);

}  // namespace pistonlab::specfun
