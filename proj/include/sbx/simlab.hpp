#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sbx/core.hpp"
#include "sbx/environments.hpp"
#include "sbx/kernels/dispatch.hpp"
#include "sbx/learners.hpp"
#include "sbx/trajectory.hpp"

namespace sbx {

struct ScalarSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;        // stddev / sqrt(n)
  double ci95_halfwidth = 0.0;  // 1.96 * stderr
};

struct AggregateStats {
  long n_trials = 0;
  ScalarSummary pseudo_regret;
  ScalarSummary second_moment_sum;
  ScalarSummary bias_sum;
  ScalarSummary ln_pi_final;
  ScalarSummary pi_final;
  ScalarSummary pi_at_t1;
  ScalarSummary pi_at_t1_plus_1;
  ScalarSummary pi_at_t1t2_plus_1;
  ScalarSummary arm1_pulls_phase1;
  double freq_e1 = 0.0, freq_e2 = 0.0, freq_recovered = 0.0;

  // Extrema of the per-round diagnostics across all trials.
  double max_sum_drift = 0.0;
  double min_entry = 1.0;
  double min_multiplier = 1.0;
  double max_multiplier = 1.0;
  double min_rel_loss1 = 0.0;
  double max_rel_loss1 = 0.0;
  bool all_phase2_monotone = true;

  std::vector<std::pair<long, double>> mean_pi1_path;
};

// Deterministic fold over trials in index order (compensated summation),
// independent of how the trials were scheduled.
AggregateStats aggregate(std::span<const Trajectory> trials);

// One seeded trial. WSU-UX always runs the scalar kernel here; use
// monte_carlo for the dispatched batch path (the two are bit-identical).
Trajectory run_trial(LearnerKind kind, const LossModel& model, const HyperParams& params,
                     Seed seed);

// Reference replay of a bandit trial, one RoundRecord per round; the slow,
// readable path used by tests and audits.
void replay_bandit(LearnerKind kind, const LossModel& model, const HyperParams& params,
                   Seed seed, const std::function<void(const RoundRecord&)>& on_round);

struct MonteCarloResult {
  std::vector<Trajectory> trials;
  AggregateStats stats;
  std::string kernel_used;
};

// n_trials independent trials with per-trial seeds mix(base, index), run on
// `parallelism` threads. Trajectories and aggregates are invariant to
// parallelism and to the kernel choice.
MonteCarloResult monte_carlo(LearnerKind kind, const LossModel& model,
                             const HyperParams& params, long n_trials,
                             std::uint64_t base_seed, int parallelism,
                             kernels::KernelChoice kernel = kernels::KernelChoice::Auto);

// --- Claim statistics ----------------------------------------------------------

struct ClaimReport {
  long horizon = 0;
  int arms = 0;
  long n_trials = 0;
  double eta = 0.0, gamma = 0.0;

  double claim1_stat = 0.0, claim1_se = 0.0;
  double claim1_target_paper = 0.0;  // ln(5/4) for two arms
  double claim2_stat = 0.0, claim2_se = 0.0;
  double claim2_threshold_paper = 0.0;  // T*K/(1600*gamma)
  double claim3_stat = 0.0, claim3_se = 0.0;
  double claim3_target_paper = 0.0;  // (9/400)*gamma*T
  double freq_e1 = 0.0, freq_e2 = 0.0, freq_recovered = 0.0;
  double freq_target_paper = 0.0;  // 1 - 2/T^2
  double phase1_mean_pi1 = 0.0, phase1_se = 0.0;
  double phase1_threshold_paper = 0.0;  // 1/(K*T)
  DerivedQuantities derived;
  std::string note;
};

// Requires non-trivially tuned params (throws RegimeMismatch otherwise) and
// stats produced on the two-phase adversarial sequence.
ClaimReport claim_statistics(const AggregateStats& stats, const HyperParams& params);

// --- Scaling fit -----------------------------------------------------------------

struct ScalePoint {
  long horizon = 0;
  double mean_regret = 0.0;
  double stderr_ = 0.0;
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of ln(mean_regret) on ln(T). Needs >= 3 points and
// strictly positive regrets.
ScalingFit scaling_fit(std::span<const ScalePoint> points);

// --- Closed-form bounds ----------------------------------------------------------

// Four-term regret bound gamma*T + eta*K*T/gamma + ln(K)/eta + 2*eta*K*T.
// Infinite when gamma or eta is zero.
double upper_bound_formula(double eta, double gamma, int k, long horizon);

// The tuned closed form 2 * (4T)^(2/3) * (K ln K)^(1/3) and the (eta, gamma)
// pair minimizing the three dominant terms of the bound.
double tuned_upper_bound(int k, long horizon);
struct TunedParams {
  double eta = 0.0;
  double gamma = 0.0;
};
TunedParams tuned_params(int k, long horizon);

// c1/eta + c2*eta*K*T/gamma + c3*gamma*T >= 3*(c1*c2*c3*K)^(1/3)*T^(2/3).
bool lower_bound_combiner_check(double c1, double c2, double c3, int k, long horizon,
                                double eta, double gamma);
struct CombinerOptimizers {
  double eta = 0.0;
  double gamma = 0.0;
};
// The (eta*, gamma*) attaining the combiner bound with equality.
CombinerOptimizers lower_bound_optimizers(double c1, double c2, double c3, int k,
                                          long horizon);

// --- Inequality helpers ------------------------------------------------------------

struct MathHelperReport {
  long log_quad_points = 0;
  long log_quad_violations = 0;
  double log_quad_worst_gap = 0.0;  // max of lhs - rhs over the grid (<= 0 when ok)

  long enumeration_samples = 0;
  long enumeration_mismatches = 0;   // enumeration vs closed form beyond 1e-12
  long second_moment_violations = 0;  // sum_j pi_j l_j^2 / pt_j > 2K
  long lhat_sq_violations = 0;        // l_i^2 / pt_i > K/gamma
  bool all_ok = false;
};

MathHelperReport math_helper_checks();

}  // namespace sbx
