#pragma once

// Batched Monte Carlo shot kernels.
//
// A Sequence is compiled once into a flat SegmentProgram; a kernel then
// advances a batch of shots (one SIMD lane per shot) from |0> through every
// segment, given per-shot noise detunings and per-pulse rotation angles.
//
// Variants: a scalar reference implementation plus AVX2 (x86-64) and NEON
// (aarch64) implementations selected at runtime. All variants execute the
// same arithmetic per lane in the same order (including the shared
// polynomial sin/cos), so their outputs are bit-identical; the equivalence
// suite asserts this. Kernel selection is overridable via the SNRG_KERNEL
// environment variable (scalar | avx2 | neon | auto).

#include <cstdint>
#include <string>
#include <vector>

#include "snrg/noise.hpp"
#include "snrg/sequences.hpp"

namespace snrg {

struct SegmentProgram {
  // One entry per segment (SoA).
  std::vector<double> omega;
  std::vector<double> cos_phi;
  std::vector<double> sin_phi;
  std::vector<double> base_detuning;  // delta_z * detuning_sign
  std::vector<double> duration;
  std::vector<double> inv_duration;        // 0 for zero-duration segments
  std::vector<std::int32_t> pulse_ordinal;  // -1 for non-pulse segments
  std::vector<std::uint8_t> instant_pulse;  // zero-duration ideal pi pulse
  std::vector<std::uint8_t> is_pulse;

  // Exact OU stepping factors across each segment, filled by prepare_ou:
  // delta' = delta * ou_decay[k] + ou_diffusion[k] * xi
  std::vector<double> ou_decay;
  std::vector<double> ou_diffusion;

  int n_segments = 0;
  int n_pulses = 0;

  static SegmentProgram compile(const Sequence& seq);
  void prepare_ou(const OuParams& p);
};

// One batch of shots. Arrays are segment-major with lane stride `stride`:
// deltas[seg * stride + lane], pulse_angles[ordinal * stride + lane].
struct ShotBatchView {
  const SegmentProgram* program = nullptr;
  const double* deltas = nullptr;        // noise detuning per segment per lane
  const double* pulse_angles = nullptr;  // rotation angle per pulse per lane
  std::size_t stride = 0;
  int batch = 0;
  double* out_p1 = nullptr;     // [batch]
  double* out_sz = nullptr;     // [batch]
  double* out_state = nullptr;  // optional, layout {a_re, a_im, b_re, b_im} x stride
};

using KernelFn = void (*)(const ShotBatchView&);

enum class KernelKind : std::uint8_t { Auto, Scalar, Avx2, Neon };

struct KernelInfo {
  KernelFn fn = nullptr;
  const char* name = "";
};

// Resolves the requested kind (Auto consults the CPU, then the SNRG_KERNEL
// environment variable). Throws std::runtime_error if the explicit request
// is unavailable on this machine.
KernelInfo select_kernel(KernelKind requested);

bool kernel_available(KernelKind kind);
const char* kernel_kind_name(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& name);  // throws on unknown names

void run_batch_scalar(const ShotBatchView& view);
#if defined(__x86_64__)
void run_batch_avx2(const ShotBatchView& view);
#endif
#if defined(__aarch64__)
void run_batch_neon(const ShotBatchView& view);
#endif

}  // namespace snrg
