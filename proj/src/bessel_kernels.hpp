#pragma once

// K0 and K1 kernels templated on the floating type, shared by the public
// double-precision functions and the extended-precision sums that need to
// survive heavy cancellation.

#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <utility>

#if defined(__SIZEOF_FLOAT128__) && !defined(PISTONLAB_NO_QUADMATH)
#include <quadmath.h>
#define PISTONLAB_HAVE_QUADMATH 1
#endif

namespace pistonlab::specfun::detail {

#ifdef PISTONLAB_HAVE_QUADMATH
__extension__ typedef __float128 wide;
inline wide wide_log(wide x) { return logq(x); }
inline wide wide_exp(wide x) { return expq(x); }
inline wide wide_sqrt(wide x) { return sqrtq(x); }
inline wide wide_abs(wide x) { return fabsq(x); }
inline wide wide_parse(const char* s) { return strtoflt128(s, nullptr); }
inline wide wide_epsilon() { return wide_parse("1.92592994438723585305597794258492732e-34"); }
#else
typedef long double wide;
inline wide wide_log(wide x) { return std::log(x); }
inline wide wide_exp(wide x) { return std::exp(x); }
inline wide wide_sqrt(wide x) { return std::sqrt(x); }
inline wide wide_abs(wide x) { return std::fabs(x); }
inline wide wide_parse(const char* s) { return std::strtold(s, nullptr); }
inline wide wide_epsilon() { return LDBL_EPSILON; }
#endif

inline double fp_log(double x) { return std::log(x); }
inline double fp_exp(double x) { return std::exp(x); }
inline double fp_sqrt(double x) { return std::sqrt(x); }
inline double fp_abs(double x) { return std::fabs(x); }
inline wide fp_log(wide x) { return wide_log(x); }
inline wide fp_exp(wide x) { return wide_exp(x); }
inline wide fp_sqrt(wide x) { return wide_sqrt(x); }
inline wide fp_abs(wide x) { return wide_abs(x); }

template <typename T>
struct Constants;

template <>
struct Constants<double> {
  static double pi() { return 3.141592653589793; }
  static double euler_gamma() { return 0.5772156649015329; }
  static double epsilon() { return DBL_EPSILON; }
};

template <>
struct Constants<wide> {
  static wide pi() {
    static const wide v = wide_parse("3.14159265358979323846264338327950288419716939937510");
    return v;
  }
  static wide euler_gamma() {
    static const wide v = wide_parse("0.57721566490153286060651209008240243104215933593992");
    return v;
  }
  static wide epsilon() { return wide_epsilon(); }
};

// Power series about the origin (x <= 2).  Returns {K0, K1}.
template <typename T>
std::pair<T, T> k01_small_argument(T x) {
  const T gamma = Constants<T>::euler_gamma();
  const T eps = Constants<T>::epsilon();
  const T q = T(0.25) * x * x;
  const T log_half = fp_log(T(0.5) * x);

  // I0, I1/(x/2) and the harmonic-number sums, accumulated together.
  T i0 = 1, i1_reduced = 1;
  T k0_tail = 0;
  T k1_tail = T(-2) * gamma + T(1);  // psi(1) + psi(2)
  T term0 = 1;                       // q^k / (k!)^2
  T term1 = 1;                       // q^k / (k! (k+1)!)
  T harmonic = 0;                    // H_k
  for (int k = 1; k < 80; ++k) {
    const T kd = k;
    term0 *= q / (kd * kd);
    term1 *= q / (kd * (kd + T(1)));
    harmonic += T(1) / kd;
    const T harmonic_next = harmonic + T(1) / (kd + T(1));
    i0 += term0;
    i1_reduced += term1;
    k0_tail += term0 * harmonic;
    k1_tail += term1 * (T(-2) * gamma + harmonic + harmonic_next);
    if (term0 < eps * T(1e-2) * i0 && term1 < eps * T(1e-2) * i1_reduced) break;
  }
  const T i1 = T(0.5) * x * i1_reduced;
  const T k0 = -(log_half + gamma) * i0 + k0_tail;
  const T k1 = T(1) / x + log_half * i1 - T(0.25) * x * k1_tail;
  return {k0, k1};
}

// Steed's continued fraction (Temme's CF2 form) for order zero; gives
// exp(x) K0 and exp(x) K1 for x >= 2.
template <typename T>
std::pair<T, T> k01_large_argument_scaled(T x) {
  const T eps = Constants<T>::epsilon();
  T b = T(2) * (T(1) + x);
  T d = T(1) / b;
  T h = d;
  T delh = d;
  T q1 = 0;
  T q2 = 1;
  const T a1 = 0.25;
  T q = a1;
  T c = a1;
  T a = -a1;
  T s = T(1) + q * delh;
  for (int i = 1; i < 20000; ++i) {
    a -= T(2 * i);
    c = -c * a / T(i + 1);
    const T qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += T(2);
    d = T(1) / (b + a * d);
    delh = (b * d - T(1)) * delh;
    h += delh;
    const T dels = q * delh;
    s += dels;
    if (fp_abs(dels / s) < eps * T(0.5)) break;
  }
  h *= a1;
  const T k0 = fp_sqrt(Constants<T>::pi() / (T(2) * x)) / s;
  const T k1 = k0 * (x + T(0.5) - h) / x;
  return {k0, k1};
}

// K0(x) without underflow handling; callers keep x moderate.
template <typename T>
T k0_value(T x) {
  if (x <= T(2)) return k01_small_argument(x).first;
  return k01_large_argument_scaled(x).first * fp_exp(-x);
}

}  // namespace pistonlab::specfun::detail
