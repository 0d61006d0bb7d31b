#include "sbx/kernels/dispatch.hpp"

namespace sbx::kernels {

void run_wsu_ux_batch_scalar(const BatchSpec& spec, std::span<const Seed> seeds,
                             std::span<Trajectory> out) {
  run_wsu_ux_batch<ScalarPack>(spec, seeds, out);
}

}  // namespace sbx::kernels
