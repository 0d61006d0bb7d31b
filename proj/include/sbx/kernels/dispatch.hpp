#pragma once

#include <span>
#include <string>

#include "sbx/kernels/wsu_ux_batch.hpp"
#include "sbx/trajectory.hpp"

namespace sbx::kernels {

enum class KernelChoice { Auto, Scalar, Avx2 };

KernelChoice kernel_choice_from_string(const std::string& name);
std::string to_string(KernelChoice c);

// True when the binary carries the AVX2 kernel and the CPU supports it.
bool avx2_available();

struct BatchKernel {
  // Lanes processed per call (1 for scalar, 4 for AVX2).
  int width;
  void (*run)(const BatchSpec&, std::span<const Seed>, std::span<Trajectory>);
  const char* name;
};

// Resolve a choice to a concrete kernel. Auto prefers AVX2 when available;
// requesting Avx2 on an unsupported host throws std::invalid_argument.
BatchKernel select_kernel(KernelChoice choice);

void run_wsu_ux_batch_scalar(const BatchSpec&, std::span<const Seed>, std::span<Trajectory>);
void run_wsu_ux_batch_avx2(const BatchSpec&, std::span<const Seed>, std::span<Trajectory>);

}  // namespace sbx::kernels
