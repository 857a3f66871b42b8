#if defined(__aarch64__)

#include <arm_neon.h>

#include "sincos_poly.hpp"
#include "snrg/kernels.hpp"

namespace snrg {

namespace {

struct SinCos2 {
  float64x2_t sin, cos;
};

inline float64x2_t poly_sin(float64x2_t r, float64x2_t z) {
  float64x2_t p = vdupq_n_f64(detail::kSin6);
  p = vaddq_f64(vdupq_n_f64(detail::kSin5), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kSin4), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kSin3), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kSin2), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kSin1), vmulq_f64(z, p));
  return vaddq_f64(r, vmulq_f64(vmulq_f64(r, z), p));
}

inline float64x2_t poly_cos(float64x2_t z) {
  float64x2_t p = vdupq_n_f64(detail::kCos6);
  p = vaddq_f64(vdupq_n_f64(detail::kCos5), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kCos4), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kCos3), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kCos2), vmulq_f64(z, p));
  p = vaddq_f64(vdupq_n_f64(detail::kCos1), vmulq_f64(z, p));
  const float64x2_t head = vsubq_f64(vdupq_n_f64(1.0), vmulq_f64(vdupq_n_f64(0.5), z));
  return vaddq_f64(head, vmulq_f64(vmulq_f64(z, z), p));
}

inline SinCos2 sincos2(float64x2_t x) {
  const float64x2_t k = vrndnq_f64(vmulq_f64(x, vdupq_n_f64(detail::kTwoOverPi)));
  float64x2_t r = vsubq_f64(x, vmulq_f64(k, vdupq_n_f64(detail::kPio2A)));
  r = vsubq_f64(r, vmulq_f64(k, vdupq_n_f64(detail::kPio2B)));
  r = vsubq_f64(r, vmulq_f64(k, vdupq_n_f64(detail::kPio2C)));
  const float64x2_t z = vmulq_f64(r, r);
  const float64x2_t s = poly_sin(r, z);
  const float64x2_t c = poly_cos(z);

  const int64x2_t q = vcvtq_s64_f64(k);  // k is exactly integral
  const int64x2_t one = vdupq_n_s64(1);
  const int64x2_t two = vdupq_n_s64(2);
  const uint64x2_t odd = vceqq_s64(vandq_s64(q, one), one);
  const uint64x2_t sin_neg = vceqq_s64(vandq_s64(q, two), two);
  const uint64x2_t cos_neg = vceqq_s64(vandq_s64(vaddq_s64(q, one), two), two);

  const uint64x2_t sign_bit = vdupq_n_u64(0x8000000000000000ULL);
  const float64x2_t sin_base = vbslq_f64(odd, c, s);
  const float64x2_t cos_base = vbslq_f64(odd, s, c);
  SinCos2 out;
  out.sin = vreinterpretq_f64_u64(
      veorq_u64(vreinterpretq_u64_f64(sin_base), vandq_u64(sin_neg, sign_bit)));
  out.cos = vreinterpretq_f64_u64(
      veorq_u64(vreinterpretq_u64_f64(cos_base), vandq_u64(cos_neg, sign_bit)));
  return out;
}

}  // namespace

void run_batch_neon(const ShotBatchView& view) {
  const SegmentProgram& prog = *view.program;
  const std::size_t stride = view.stride;
  const int vec_batch = view.batch & ~1;

  for (int lane0 = 0; lane0 < vec_batch; lane0 += 2) {
    float64x2_t ar = vdupq_n_f64(1.0);
    float64x2_t ai = vdupq_n_f64(0.0);
    float64x2_t br = vdupq_n_f64(0.0);
    float64x2_t bi = vdupq_n_f64(0.0);

    for (int seg = 0; seg < prog.n_segments; ++seg) {
      const auto k = static_cast<std::size_t>(seg);
      float64x2_t c, tx, ty, tz;

      if (prog.instant_pulse[k]) {
        const float64x2_t angle =
            vld1q_f64(view.pulse_angles + static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
                      static_cast<std::size_t>(lane0));
        const SinCos2 sc = sincos2(vmulq_f64(vdupq_n_f64(0.5), angle));
        c = sc.cos;
        tx = vmulq_f64(vdupq_n_f64(prog.cos_phi[k]), sc.sin);
        ty = vmulq_f64(vdupq_n_f64(prog.sin_phi[k]), sc.sin);
        tz = vdupq_n_f64(0.0);
      } else {
        float64x2_t om;
        if (prog.is_pulse[k]) {
          const float64x2_t angle = vld1q_f64(
              view.pulse_angles + static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
              static_cast<std::size_t>(lane0));
          om = vmulq_f64(angle, vdupq_n_f64(prog.inv_duration[k]));
        } else {
          om = vdupq_n_f64(prog.omega[k]);
        }
        const float64x2_t dlt =
            vaddq_f64(vdupq_n_f64(prog.base_detuning[k]),
                      vld1q_f64(view.deltas + k * stride + static_cast<std::size_t>(lane0)));
        const float64x2_t rho =
            vsqrtq_f64(vaddq_f64(vmulq_f64(om, om), vmulq_f64(dlt, dlt)));
        const float64x2_t half = vmulq_f64(vdupq_n_f64(0.5 * prog.duration[k]), rho);
        const SinCos2 sc = sincos2(half);
        const uint64x2_t nonzero = vcgtq_f64(rho, vdupq_n_f64(0.0));
        const float64x2_t f = vreinterpretq_f64_u64(
            vandq_u64(vreinterpretq_u64_f64(vdivq_f64(sc.sin, rho)), nonzero));
        c = sc.cos;
        tx = vmulq_f64(vmulq_f64(om, vdupq_n_f64(prog.cos_phi[k])), f);
        ty = vmulq_f64(vmulq_f64(om, vdupq_n_f64(prog.sin_phi[k])), f);
        tz = vmulq_f64(dlt, f);
      }

      const float64x2_t ar2 = vaddq_f64(
          vsubq_f64(vaddq_f64(vmulq_f64(c, ar), vmulq_f64(tz, ai)), vmulq_f64(ty, br)),
          vmulq_f64(tx, bi));
      const float64x2_t ai2 = vsubq_f64(
          vsubq_f64(vsubq_f64(vmulq_f64(c, ai), vmulq_f64(tz, ar)), vmulq_f64(ty, bi)),
          vmulq_f64(tx, br));
      const float64x2_t br2 = vsubq_f64(
          vaddq_f64(vaddq_f64(vmulq_f64(ty, ar), vmulq_f64(tx, ai)), vmulq_f64(c, br)),
          vmulq_f64(tz, bi));
      const float64x2_t bi2 = vaddq_f64(
          vaddq_f64(vsubq_f64(vmulq_f64(ty, ai), vmulq_f64(tx, ar)), vmulq_f64(c, bi)),
          vmulq_f64(tz, br));
      ar = ar2;
      ai = ai2;
      br = br2;
      bi = bi2;
    }

    const float64x2_t n0 = vaddq_f64(vmulq_f64(ar, ar), vmulq_f64(ai, ai));
    const float64x2_t p1 = vaddq_f64(vmulq_f64(br, br), vmulq_f64(bi, bi));
    vst1q_f64(view.out_p1 + lane0, p1);
    vst1q_f64(view.out_sz + lane0, vmulq_f64(vdupq_n_f64(0.5), vsubq_f64(n0, p1)));
    if (view.out_state != nullptr) {
      vst1q_f64(view.out_state + 0 * stride + static_cast<std::size_t>(lane0), ar);
      vst1q_f64(view.out_state + 1 * stride + static_cast<std::size_t>(lane0), ai);
      vst1q_f64(view.out_state + 2 * stride + static_cast<std::size_t>(lane0), br);
      vst1q_f64(view.out_state + 3 * stride + static_cast<std::size_t>(lane0), bi);
    }
  }

  if (vec_batch < view.batch) {
    ShotBatchView tail = view;
    tail.batch = view.batch - vec_batch;
    tail.deltas = view.deltas + vec_batch;
    tail.pulse_angles = view.pulse_angles == nullptr ? nullptr : view.pulse_angles + vec_batch;
    tail.out_p1 = view.out_p1 + vec_batch;
    tail.out_sz = view.out_sz + vec_batch;
    tail.out_state = view.out_state == nullptr ? nullptr : view.out_state + vec_batch;
    run_batch_scalar(tail);
  }
}

}  // namespace snrg

#endif  // __aarch64__
