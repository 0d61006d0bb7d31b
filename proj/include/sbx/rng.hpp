#pragma once

#include <cstdint>

namespace sbx {

// 64-bit avalanche finalizer (SplitMix64 / MurmurHash3-style mix).
// Bijective on uint64, so distinct inputs map to distinct outputs.
inline constexpr std::uint64_t avalanche64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Per-trial stream seed: mix(base, trial_index). The golden-ratio stride is
// odd, hence multiplication mod 2^64 is injective and distinct trial indices
// always produce distinct stream seeds for a fixed base.
inline constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t trial_index) {
  return avalanche64(base + (trial_index + 1) * kGoldenGamma);
}

// SplitMix64 sequence generator; used only to expand a mixed seed into the
// xoshiro state, never as the trial stream itself.
struct SplitMix64 {
  std::uint64_t state;
  constexpr std::uint64_t next() {
    state += kGoldenGamma;
    return avalanche64(state);
  }
};

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// xoshiro256++ (Blackman & Vigna). Chosen because the update uses only
// add/xor/shift/rotate, which vectorizes lane-exactly on AVX2; the batch
// kernels run one independent stream per SIMD lane and must reproduce this
// scalar stream bit-for-bit.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& s : s_) s = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53. The u64->double
  // conversion is exact below 2^53, so the SIMD conversion trick in the
  // batch kernels yields the same bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  const std::uint64_t* state() const { return s_; }

 private:
  std::uint64_t s_[4];
};

}  // namespace sbx
