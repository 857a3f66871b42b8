#pragma once

// Polynomial sin/cos shared by all shot kernels.
//
// Payne-Hanek-free Cody-Waite reduction (three-part pi/2 split) plus the
// fdlibm minimax kernels on [-pi/4, pi/4]. Valid for |x| up to ~1e6 rad,
// far beyond any half-angle this simulator produces; absolute error is a
// few 1e-17. The vector kernels reproduce exactly this operation sequence
// lane-wise, which is what makes scalar and SIMD results bit-identical.

#include <cmath>
#include <cstdint>

namespace snrg::detail {

// pi/2 = PIO2_A + PIO2_B + PIO2_C (descending magnitude)
inline constexpr double kPio2A = 1.57079632673412561417e+00;
inline constexpr double kPio2B = 6.07710050630396597660e-11;
inline constexpr double kPio2C = 2.02226624879595063154e-21;
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;

inline constexpr double kSin1 = -1.66666666666666324348e-01;
inline constexpr double kSin2 = 8.33333333332248946124e-03;
inline constexpr double kSin3 = -1.98412698298579493134e-04;
inline constexpr double kSin4 = 2.75573137070700676789e-06;
inline constexpr double kSin5 = -2.50507602534068634195e-08;
inline constexpr double kSin6 = 1.58969099521155010221e-10;

inline constexpr double kCos1 = 4.16666666666666019037e-02;
inline constexpr double kCos2 = -1.38888888888741095749e-03;
inline constexpr double kCos3 = 2.48015872894767294178e-05;
inline constexpr double kCos4 = -2.75573143513906633035e-07;
inline constexpr double kCos5 = 2.08757232129817482790e-09;
inline constexpr double kCos6 = -1.13596475577881948265e-11;

inline double kernel_sin(double r, double z) {
  double p = kSin6;
  p = kSin5 + z * p;
  p = kSin4 + z * p;
  p = kSin3 + z * p;
  p = kSin2 + z * p;
  p = kSin1 + z * p;
  return r + (r * z) * p;
}

inline double kernel_cos(double z) {
  double p = kCos6;
  p = kCos5 + z * p;
  p = kCos4 + z * p;
  p = kCos3 + z * p;
  p = kCos2 + z * p;
  p = kCos1 + z * p;
  return (1.0 - 0.5 * z) + (z * z) * p;
}

// Writes sin(x) and cos(x). Quadrant handling mirrors the mask logic of the
// vector kernels: swap kernel outputs when the quadrant is odd, then flip
// signs per quadrant; both steps are exact, so values match bit-for-bit.
inline void sincos_poly(double x, double* sin_out, double* cos_out) {
  const double k = std::nearbyint(x * kTwoOverPi);
  const double r = ((x - k * kPio2A) - k * kPio2B) - k * kPio2C;
  const double z = r * r;
  const double s = kernel_sin(r, z);
  const double c = kernel_cos(z);

  const auto q = static_cast<std::int64_t>(k);
  const bool odd = (q & 1) != 0;
  const double sin_base = odd ? c : s;
  const double cos_base = odd ? s : c;
  *sin_out = (q & 2) ? -sin_base : sin_base;
  *cos_out = ((q + 1) & 2) ? -cos_base : cos_base;
}

}  // namespace snrg::detail
