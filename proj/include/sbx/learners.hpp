#pragma once

#include <span>
#include <string>
#include <vector>

#include "sbx/core.hpp"
#include "sbx/rng.hpp"
#include "sbx/scoring.hpp"

namespace sbx {

enum class LearnerKind { Hedge, MWU, WSU, WSU_UX, EXP3 };

std::string to_string(LearnerKind k);
LearnerKind learner_from_string(const std::string& name);
bool is_bandit(LearnerKind k);

// One state type for every update rule. probs is always the current
// distribution pi_t; Hedge/EXP3 additionally keep log-weights (exp(-eta*L)
// underflows over long horizons otherwise) and MWU keeps linear weights with
// a periodic renormalization (its multipliers do not compose in log space).
struct LearnerState {
  LearnerKind kind = LearnerKind::WSU;
  HyperParams params;
  long t = 1;
  ProbVector probs;
  std::vector<double> log_weights;
  std::vector<double> lin_weights;

  static LearnerState make(LearnerKind kind, const HyperParams& params);
};

inline constexpr long kMwuRenormStride = 1024;

// --- Full-information updates -------------------------------------------------

// w_i <- w_i * exp(-eta * loss_i), probabilities renormalized.
void hedge_update(LearnerState& state, std::span<const double> losses);

// w_i <- w_i * (1 - eta * loss_i); requires eta * loss_i < 1.
void mwu_update(LearnerState& state, std::span<const double> losses);

// pi'_i = pi_i * (1 - eta * (loss_i - sum_j pi_j loss_j)).
// Sum-preserving in exact arithmetic; all entries stay positive for
// eta in (0, 1/2) and losses in [0,1]^K.
ProbVector wsu_update(const ProbVector& pi, std::span<const double> losses, double eta);

// --- Wagering view -------------------------------------------------------------

// Weighted-score wagering payments Gamma_i = m_i * (1 - l(r_i,y) + avg loss).
// With normalize_wagers the average-score term weighs losses by m_j / sum(m),
// which keeps the mechanism budget-balanced for any wager scale; without it
// the raw wagers are used verbatim and budget balance needs sum(m) = 1.
std::vector<double> wswm_payments(std::span<const double> reports,
                                  std::span<const double> wagers, int outcome, LossFn fn,
                                  bool normalize_wagers);

// The composition Gamma^WSWM(r, eta*pi, y) + (1 - eta) * pi with wager-
// normalized average scores; reproduces wsu_update on losses l_i = fn(r_i, y).
ProbVector wsu_as_wagering(const ProbVector& pi, std::span<const double> reports,
                           int outcome, double eta, LossFn fn);

// --- Bandit machinery ----------------------------------------------------------

// Inverse-CDF draw: smallest index i with u <= sum_{j<=i} pi_tilde_j, arms
// scanned in index order (ties on the cumulative sums resolve to the lower
// index); the last arm absorbs any trailing rounding gap.
int sample_index(std::span<const double> pi_tilde, double u);

// Importance-weighted loss estimate: loss/pi_tilde[chosen] at `chosen`, else 0.
std::vector<double> estimate_losses(int chosen, double loss_value,
                                    std::span<const double> pi_tilde);

// Raw mixed distribution (1-gamma)*pi + gamma/K as plain values. The bandit
// steps sample from and divide by these exact values; ProbVector repair would
// perturb the low bits, so mixing here stays raw.
std::vector<double> mixed_distribution(const ProbVector& pi, double gamma);

// One bandit round with the arm draw forced (used by audits and tests).
RoundRecord wsu_ux_step_forced(LearnerState& state, std::span<const double> true_losses,
                               int chosen);
RoundRecord exp3_step_forced(LearnerState& state, std::span<const double> true_losses,
                             int chosen);

// One bandit round: draw I_t from the mixed distribution, build the
// importance-weighted estimates, update pi.
RoundRecord wsu_ux_step(LearnerState& state, std::span<const double> true_losses,
                        Xoshiro256pp& rng);
RoundRecord exp3_step(LearnerState& state, std::span<const double> true_losses,
                      Xoshiro256pp& rng);

// Minimax-style default tuning for the EXP3 baseline.
double exp3_default_eta(int k, long horizon);

}  // namespace sbx
