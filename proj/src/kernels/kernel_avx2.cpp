#if defined(__x86_64__)

#include <immintrin.h>

#include "sincos_poly.hpp"
#include "snrg/kernels.hpp"

namespace snrg {

namespace {

// Same Cody-Waite reduction and fdlibm kernels as sincos_poly, four lanes at
// a time, with the identical operation order (mul/add only, no FMA).
struct SinCos4 {
  __m256d sin, cos;
};

inline __m256d poly_sin(__m256d r, __m256d z) {
  __m256d p = _mm256_set1_pd(detail::kSin6);
  p = _mm256_add_pd(_mm256_set1_pd(detail::kSin5), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kSin4), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kSin3), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kSin2), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kSin1), _mm256_mul_pd(z, p));
  return _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(r, z), p));
}

inline __m256d poly_cos(__m256d z) {
  __m256d p = _mm256_set1_pd(detail::kCos6);
  p = _mm256_add_pd(_mm256_set1_pd(detail::kCos5), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kCos4), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kCos3), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kCos2), _mm256_mul_pd(z, p));
  p = _mm256_add_pd(_mm256_set1_pd(detail::kCos1), _mm256_mul_pd(z, p));
  const __m256d head =
      _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(0.5), z));
  return _mm256_add_pd(head, _mm256_mul_pd(_mm256_mul_pd(z, z), p));
}

inline SinCos4 sincos4(__m256d x) {
  const __m256d k = _mm256_round_pd(
      _mm256_mul_pd(x, _mm256_set1_pd(detail::kTwoOverPi)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, _mm256_set1_pd(detail::kPio2A)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, _mm256_set1_pd(detail::kPio2B)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, _mm256_set1_pd(detail::kPio2C)));
  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d s = poly_sin(r, z);
  const __m256d c = poly_cos(z);

  // Low 32 bits of (k + 2^52 + 2^51) hold k as a two's-complement integer.
  const __m256i q =
      _mm256_castpd_si256(_mm256_add_pd(k, _mm256_set1_pd(6755399441055744.0)));
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d odd_mask = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d sin_neg = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(q, two), two));
  const __m256d cos_neg = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), two));

  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  SinCos4 out;
  const __m256d sin_base = _mm256_blendv_pd(s, c, odd_mask);
  const __m256d cos_base = _mm256_blendv_pd(c, s, odd_mask);
  out.sin = _mm256_xor_pd(sin_base, _mm256_and_pd(sin_neg, sign_bit));
  out.cos = _mm256_xor_pd(cos_base, _mm256_and_pd(cos_neg, sign_bit));
  return out;
}

}  // namespace

void run_batch_avx2(const ShotBatchView& view) {
  const SegmentProgram& prog = *view.program;
  const std::size_t stride = view.stride;
  const int vec_batch = view.batch & ~3;

  for (int lane0 = 0; lane0 < vec_batch; lane0 += 4) {
    __m256d ar = _mm256_set1_pd(1.0);
    __m256d ai = _mm256_setzero_pd();
    __m256d br = _mm256_setzero_pd();
    __m256d bi = _mm256_setzero_pd();

    for (int seg = 0; seg < prog.n_segments; ++seg) {
      const auto k = static_cast<std::size_t>(seg);
      __m256d c, tx, ty, tz;

      if (prog.instant_pulse[k]) {
        const __m256d angle = _mm256_loadu_pd(
            view.pulse_angles + static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
            static_cast<std::size_t>(lane0));
        const SinCos4 sc = sincos4(_mm256_mul_pd(_mm256_set1_pd(0.5), angle));
        c = sc.cos;
        tx = _mm256_mul_pd(_mm256_set1_pd(prog.cos_phi[k]), sc.sin);
        ty = _mm256_mul_pd(_mm256_set1_pd(prog.sin_phi[k]), sc.sin);
        tz = _mm256_setzero_pd();
      } else {
        __m256d om;
        if (prog.is_pulse[k]) {
          const __m256d angle = _mm256_loadu_pd(
              view.pulse_angles + static_cast<std::size_t>(prog.pulse_ordinal[k]) * stride +
              static_cast<std::size_t>(lane0));
          om = _mm256_mul_pd(angle, _mm256_set1_pd(prog.inv_duration[k]));
        } else {
          om = _mm256_set1_pd(prog.omega[k]);
        }
        const __m256d dlt = _mm256_add_pd(
            _mm256_set1_pd(prog.base_detuning[k]),
            _mm256_loadu_pd(view.deltas + k * stride + static_cast<std::size_t>(lane0)));
        const __m256d rho = _mm256_sqrt_pd(
            _mm256_add_pd(_mm256_mul_pd(om, om), _mm256_mul_pd(dlt, dlt)));
        const __m256d half =
            _mm256_mul_pd(_mm256_set1_pd(0.5 * prog.duration[k]), rho);
        const SinCos4 sc = sincos4(half);
        const __m256d nonzero = _mm256_cmp_pd(rho, _mm256_setzero_pd(), _CMP_GT_OQ);
        const __m256d f = _mm256_and_pd(_mm256_div_pd(sc.sin, rho), nonzero);
        c = sc.cos;
        tx = _mm256_mul_pd(_mm256_mul_pd(om, _mm256_set1_pd(prog.cos_phi[k])), f);
        ty = _mm256_mul_pd(_mm256_mul_pd(om, _mm256_set1_pd(prog.sin_phi[k])), f);
        tz = _mm256_mul_pd(dlt, f);
      }

      const __m256d ar2 = _mm256_add_pd(
          _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(c, ar), _mm256_mul_pd(tz, ai)),
                        _mm256_mul_pd(ty, br)),
          _mm256_mul_pd(tx, bi));
      const __m256d ai2 = _mm256_sub_pd(
          _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(c, ai), _mm256_mul_pd(tz, ar)),
                        _mm256_mul_pd(ty, bi)),
          _mm256_mul_pd(tx, br));
      const __m256d br2 = _mm256_sub_pd(
          _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ty, ar), _mm256_mul_pd(tx, ai)),
                        _mm256_mul_pd(c, br)),
          _mm256_mul_pd(tz, bi));
      const __m256d bi2 = _mm256_add_pd(
          _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ty, ai), _mm256_mul_pd(tx, ar)),
                        _mm256_mul_pd(c, bi)),
          _mm256_mul_pd(tz, br));
      ar = ar2;
      ai = ai2;
      br = br2;
      bi = bi2;
    }

    const __m256d n0 = _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
    const __m256d p1 = _mm256_add_pd(_mm256_mul_pd(br, br), _mm256_mul_pd(bi, bi));
    _mm256_storeu_pd(view.out_p1 + lane0, p1);
    _mm256_storeu_pd(view.out_sz + lane0,
                     _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_sub_pd(n0, p1)));
    if (view.out_state != nullptr) {
      _mm256_storeu_pd(view.out_state + 0 * stride + static_cast<std::size_t>(lane0), ar);
      _mm256_storeu_pd(view.out_state + 1 * stride + static_cast<std::size_t>(lane0), ai);
      _mm256_storeu_pd(view.out_state + 2 * stride + static_cast<std::size_t>(lane0), br);
      _mm256_storeu_pd(view.out_state + 3 * stride + static_cast<std::size_t>(lane0), bi);
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

#endif  // __x86_64__
