#include <cstdlib>
#include <stdexcept>

#include "snrg/kernels.hpp"

namespace snrg {

bool kernel_available(KernelKind kind) {
  switch (kind) {
    case KernelKind::Auto:
    case KernelKind::Scalar:
      return true;
    case KernelKind::Avx2:
#if defined(__x86_64__)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case KernelKind::Neon:
#if defined(__aarch64__)
      return true;  // baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Auto: return "auto";
    case KernelKind::Scalar: return "scalar";
    case KernelKind::Avx2: return "avx2";
    case KernelKind::Neon: return "neon";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "auto") return KernelKind::Auto;
  if (name == "scalar") return KernelKind::Scalar;
  if (name == "avx2") return KernelKind::Avx2;
  if (name == "neon") return KernelKind::Neon;
  throw std::runtime_error("unknown kernel kind: " + name);
}

KernelInfo select_kernel(KernelKind requested) {
  KernelKind kind = requested;
  if (kind == KernelKind::Auto) {
    if (const char* env = std::getenv("SNRG_KERNEL"); env != nullptr && env[0] != '\0') {
      kind = parse_kernel_kind(env);
    }
  }
  if (kind == KernelKind::Auto) {
#if defined(__x86_64__)
    kind = kernel_available(KernelKind::Avx2) ? KernelKind::Avx2 : KernelKind::Scalar;
#elif defined(__aarch64__)
    kind = KernelKind::Neon;
#else
    kind = KernelKind::Scalar;
#endif
  }
  if (!kernel_available(kind)) {
    throw std::runtime_error(std::string("kernel not available on this machine: ") +
                             kernel_kind_name(kind));
  }
  switch (kind) {
    case KernelKind::Scalar:
      return {&run_batch_scalar, "scalar"};
    case KernelKind::Avx2:
#if defined(__x86_64__)
      return {&run_batch_avx2, "avx2"};
#else
      break;
#endif
    case KernelKind::Neon:
#if defined(__aarch64__)
      return {&run_batch_neon, "neon"};
#else
      break;
#endif
    case KernelKind::Auto:
      break;
  }
  return {&run_batch_scalar, "scalar"};
}

}  // namespace snrg
