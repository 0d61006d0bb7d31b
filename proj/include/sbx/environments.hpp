#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sbx/core.hpp"

namespace sbx {

enum class LossModelKind { LowerBoundSeq, TrivialEtaSeq, BernoulliStochastic };

std::string to_string(LossModelKind k);

// An oblivious loss assignment l(t, i) in [0,1], pure in (t, i) and shared
// read-only across trials. Rounds are 1-based, arms 0-based.
class LossModel {
 public:
  virtual ~LossModel() = default;
  virtual LossModelKind kind() const = 0;
  virtual long horizon() const = 0;
  virtual int arms() const = 0;
  virtual double loss(long t, int arm) const = 0;
  virtual std::string name() const = 0;

  // Per-round rows flattened as table[(t-1)*K + arm]; the Monte Carlo kernels
  // read this instead of calling loss() per round.
  std::vector<double> materialize() const;

  // Arm with minimal cumulative loss at the horizon, ties to the lowest index.
  int best_arm() const;

  std::vector<double> cumulative_losses() const;
};

// Two arms; arm 0 alone loses during rounds t <= floor(T/100), then arm 1
// alone loses for the rest. The best arm in hindsight is arm 0 with
// cumulative loss floor(T/100). Requires T >= 100 so the first phase is
// nonempty.
std::unique_ptr<LossModel> lower_bound_sequence(long horizon);

// Two arms; arm 0 is lossless and arm 1 loses every round, so regret equals
// the expected number of arm-1 pulls.
std::unique_ptr<LossModel> trivial_sequence(long horizon);

// Sanity-harness environment: each arm's loss is an independent Bernoulli
// draw, realized once at construction from model_seed (so the table is fixed
// and shared across trials).
std::unique_ptr<LossModel> bernoulli_stochastic(long horizon, double p1, double p2,
                                                std::uint64_t model_seed);

// Belief/outcome realization of a loss table: y_t = 0 and b = sqrt(loss), so
// the squared loss of the truthful report reproduces loss(t, i) exactly for
// 0/1 losses (and any loss that is an exact square).
struct BeliefRealization {
  std::vector<double> beliefs;  // per arm
  int outcome = 0;
};
BeliefRealization realize_beliefs(const LossModel& model, long t);

// Sub-phase lengths t1 = floor(T/100), t2 = floor(2T/10), t3 = floor(T/10),
// and t4 absorbing the rounding remainder. Boundaries are the last round of
// each sub-phase. Requires T >= 1000 so all four sub-phases are nonempty.
struct PhasePlan {
  long t1 = 0, t2 = 0, t3 = 0, t4 = 0;
  long end1 = 0, end2 = 0, end3 = 0, end4 = 0;
};
PhasePlan phase_plan(long horizon);

// Recovery-analysis quantities:
//   eps1 = sqrt(6 ln T / ((2 gamma / K) T1)),  eps2 = sqrt(4 ln T / (((3-gamma)/4) T2))
//   M    = (1/ln 2) [ ln(2K/gamma) + 2 (1+eps1)(1+eta K/gamma) eta T1 ]
//   T'   = (1/(1-eps2)) (4/(3-gamma)) (2/eta) M
// eps1 may exceed 1 at moderate horizons; only eps2 >= 1 is an error.
struct DerivedQuantities {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double m_exponent = 0.0;
  double t_prime = 0.0;
  bool t_prime_within_phase21 = false;  // T' <= T2, the large-horizon consequence
};
DerivedQuantities derived_quantities(const HyperParams& params);

}  // namespace sbx
