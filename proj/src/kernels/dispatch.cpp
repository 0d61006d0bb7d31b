#include "sbx/kernels/dispatch.hpp"

#include <stdexcept>

namespace sbx::kernels {

KernelChoice kernel_choice_from_string(const std::string& name) {
  if (name == "auto") return KernelChoice::Auto;
  if (name == "scalar") return KernelChoice::Scalar;
  if (name == "avx2") return KernelChoice::Avx2;
  throw std::invalid_argument("unknown kernel choice: " + name +
                              " (expected auto|scalar|avx2)");
}

std::string to_string(KernelChoice c) {
  switch (c) {
    case KernelChoice::Auto: return "auto";
    case KernelChoice::Scalar: return "scalar";
    case KernelChoice::Avx2: return "avx2";
  }
  return "?";
}

bool avx2_available() {
#if defined(SBX_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

BatchKernel select_kernel(KernelChoice choice) {
  if (choice == KernelChoice::Avx2 && !avx2_available()) {
    throw std::invalid_argument("AVX2 kernel requested but not available on this host");
  }
  const bool use_avx2 = choice == KernelChoice::Avx2 ||
                        (choice == KernelChoice::Auto && avx2_available());
  if (use_avx2) return BatchKernel{4, &run_wsu_ux_batch_avx2, "avx2"};
  return BatchKernel{1, &run_wsu_ux_batch_scalar, "scalar"};
}

}  // namespace sbx::kernels
