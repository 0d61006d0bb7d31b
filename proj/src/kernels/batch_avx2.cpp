// Compiled with -mavx2 (see src/CMakeLists.txt); only ever called behind the
// runtime CPU check in select_kernel().
#include "sbx/kernels/dispatch.hpp"

namespace sbx::kernels {

#if defined(__AVX2__)
void run_wsu_ux_batch_avx2(const BatchSpec& spec, std::span<const Seed> seeds,
                           std::span<Trajectory> out) {
  run_wsu_ux_batch<Avx2Pack>(spec, seeds, out);
}
#else
void run_wsu_ux_batch_avx2(const BatchSpec&, std::span<const Seed>, std::span<Trajectory>) {
  throw std::runtime_error("AVX2 kernel not compiled into this binary");
}
#endif

}  // namespace sbx::kernels
