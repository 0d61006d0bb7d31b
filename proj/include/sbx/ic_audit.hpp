#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbx/core.hpp"
#include "sbx/learners.hpp"
#include "sbx/scoring.hpp"

namespace sbx {

// The update rules audited for incentive compatibility. Hedge and MWU are
// audited on their normalized weights (the selection probability), which is
// exactly where their truthfulness breaks.
enum class AuditAlgo { WSU, WSU_UX, HedgeNormalized, MwuNormalized };

std::string to_string(AuditAlgo a);
AuditAlgo audit_algo_from_string(const std::string& name);

// Whether the bandit expectation also integrates over the arm draw
// (Unconditional) or fixes I_t to the audited expert (ConditionalOnSelected,
// the bandit protocol's own semantics: only the drawn arm reports).
enum class Conditioning { ConditionalOnSelected, Unconditional };

std::string to_string(Conditioning c);

struct AuditConfig {
  AuditAlgo algo = AuditAlgo::WSU;
  ProbVector pi;
  double eta = 0.1;
  double gamma = 0.0;  // used by WSU_UX only
  std::vector<double> other_reports;  // size K; entry at `expert` is ignored
  double belief = 0.5;
  int expert = 0;
  LossFn loss_fn = LossFn::Squared;
  Conditioning conditioning = Conditioning::ConditionalOnSelected;
};

// Exact expectation of pi_{t+1, expert} over y ~ Bern(belief) -- and, for
// WSU-UX, over the arm draw when Unconditional -- by enumerating the <= 2K
// branches. No sampling anywhere: incentive compatibility is a strict argmax
// property and sampling noise would make verdicts flaky.
double expected_next_prob(const AuditConfig& cfg, double report);

struct BestResponse {
  double r_star = 0.0;
  double value = 0.0;
};

// Grid argmax of expected_next_prob; ties break toward the point closest to
// the belief, then toward the lowest report.
BestResponse best_response(const AuditConfig& cfg, int grid_points);

struct IcVerdict {
  bool truthful = false;
  long n_configs = 0;
  int grid_points = 0;
  double grid_step = 0.0;
  double max_deviation = 0.0;  // max |r* - b| over the audited configs
  AuditConfig worst_config;    // the full counterexample, for reproduction
  double worst_r_star = 0.0;
};

// Audits n_configs random configurations (documented generator, fixed seed).
// TRUTHFUL iff every best response is within one grid step of the belief.
IcVerdict ic_verdict(AuditAlgo algo, Conditioning cond, long n_configs, int grid_points,
                     std::uint64_t seed);

}  // namespace sbx
