#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sbx/core.hpp"

namespace sbx {

// Per-trial record. pi1 refers to the first arm (the best arm of the
// two-phase adversarial sequence). Probe fields hold the distribution at the
// start of the named round; they are NaN when the horizon is too short for a
// phase plan. Diagnostic extrema are tracked every round by the trial
// kernels; NaN for learners they do not apply to.
struct Trajectory {
  Seed seed;
  long horizon = 0;

  double pseudo_regret = 0.0;
  double second_moment_sum = 0.0;  // sum_t (lhat_1 - sum_j pi_j lhat_j)^2
  double bias_sum = 0.0;           // sum_t sum_j (pi~_j - pi_j) lhat_j
  double ln_pi_final = 0.0;
  double pi_final = 0.0;

  double pi_at_t1 = 0.0;        // start of round T1
  double pi_at_t1_plus_1 = 0.0;  // end of phase 1
  double pi_at_t1t2_plus_1 = 0.0;  // end of phase 2.1

  bool event_e1 = false;         // pi_{T1+1,1} >= 2^-M
  bool event_e2 = false;         // pi_{T1+T2+1,1} >= 1/4
  bool event_recovered = false;  // pi_{T+1,1} >= 3/4

  long arm1_pulls_phase1 = 0;  // pulls of the first arm during rounds t <= floor(T/100)

  // Kernel diagnostics (per-round extrema across the whole trial).
  double max_sum_drift = 0.0;      // max |sum pi - 1| before renormalization
  double min_entry = 0.0;          // min entry before clamping
  double min_multiplier = 0.0;     // min_i 1 - eta (lhat_i - avg)
  double max_multiplier = 0.0;
  double min_rel_loss1 = 0.0;      // min_t eta (lhat_1 - avg)
  double max_rel_loss1 = 0.0;
  bool phase2_monotone = false;    // pi1 non-decreasing for t > floor(T/100)

  // (round r, pi1 at start of round r); r = T+1 is the final state.
  std::vector<std::pair<long, double>> pi1_path;

  bool identical_to(const Trajectory& other) const;
};

}  // namespace sbx
