#include "sbx/trajectory.hpp"

#include <cstring>

namespace sbx {

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }
}  // namespace

bool Trajectory::identical_to(const Trajectory& o) const {
  if (seed.base != o.seed.base || seed.trial_index != o.seed.trial_index ||
      horizon != o.horizon || event_e1 != o.event_e1 || event_e2 != o.event_e2 ||
      event_recovered != o.event_recovered || arm1_pulls_phase1 != o.arm1_pulls_phase1 ||
      phase2_monotone != o.phase2_monotone) {
    return false;
  }
  const double a[] = {pseudo_regret, second_moment_sum, bias_sum,    ln_pi_final,
                      pi_final,      pi_at_t1,          pi_at_t1_plus_1,
                      pi_at_t1t2_plus_1, max_sum_drift, min_entry,   min_multiplier,
                      max_multiplier, min_rel_loss1,    max_rel_loss1};
  const double b[] = {o.pseudo_regret, o.second_moment_sum, o.bias_sum,    o.ln_pi_final,
                      o.pi_final,      o.pi_at_t1,          o.pi_at_t1_plus_1,
                      o.pi_at_t1t2_plus_1, o.max_sum_drift, o.min_entry,   o.min_multiplier,
                      o.max_multiplier, o.min_rel_loss1,    o.max_rel_loss1};
  for (std::size_t i = 0; i < sizeof(a) / sizeof(a[0]); ++i) {
    if (!same_bits(a[i], b[i])) return false;
  }
  if (pi1_path.size() != o.pi1_path.size()) return false;
  for (std::size_t i = 0; i < pi1_path.size(); ++i) {
    if (pi1_path[i].first != o.pi1_path[i].first ||
        !same_bits(pi1_path[i].second, o.pi1_path[i].second)) {
      return false;
    }
  }
  return true;
}

}  // namespace sbx
