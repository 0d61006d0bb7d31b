#include "sbx/environments.hpp"

#include <cmath>
#include <stdexcept>

#include "sbx/rng.hpp"

namespace sbx {

std::string to_string(LossModelKind k) {
  switch (k) {
    case LossModelKind::LowerBoundSeq: return "lower-bound";
    case LossModelKind::TrivialEtaSeq: return "trivial";
    case LossModelKind::BernoulliStochastic: return "bernoulli";
  }
  return "?";
}

std::vector<double> LossModel::materialize() const {
  const long t_max = horizon();
  const int k = arms();
  std::vector<double> table(static_cast<std::size_t>(t_max) * k);
  for (long t = 1; t <= t_max; ++t) {
    for (int i = 0; i < k; ++i) {
      table[static_cast<std::size_t>(t - 1) * k + i] = loss(t, i);
    }
  }
  return table;
}

std::vector<double> LossModel::cumulative_losses() const {
  std::vector<double> cum(static_cast<std::size_t>(arms()), 0.0);
  for (long t = 1; t <= horizon(); ++t) {
    for (int i = 0; i < arms(); ++i) cum[static_cast<std::size_t>(i)] += loss(t, i);
  }
  return cum;
}

int LossModel::best_arm() const {
  const auto cum = cumulative_losses();
  int best = 0;
  for (int i = 1; i < arms(); ++i) {
    if (cum[static_cast<std::size_t>(i)] < cum[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

namespace {

class LowerBoundModel final : public LossModel {
 public:
  explicit LowerBoundModel(long horizon) : horizon_(horizon), switch_(horizon / 100) {}
  LossModelKind kind() const override { return LossModelKind::LowerBoundSeq; }
  long horizon() const override { return horizon_; }
  int arms() const override { return 2; }
  double loss(long t, int arm) const override {
    const bool phase1 = t <= switch_;
    return (arm == 0) == phase1 ? 1.0 : 0.0;
  }
  std::string name() const override { return "lower-bound"; }

 private:
  long horizon_;
  long switch_;
};

class TrivialModel final : public LossModel {
 public:
  explicit TrivialModel(long horizon) : horizon_(horizon) {}
  LossModelKind kind() const override { return LossModelKind::TrivialEtaSeq; }
  long horizon() const override { return horizon_; }
  int arms() const override { return 2; }
  double loss(long, int arm) const override { return arm == 0 ? 0.0 : 1.0; }
  std::string name() const override { return "trivial"; }

 private:
  long horizon_;
};

class BernoulliModel final : public LossModel {
 public:
  BernoulliModel(long horizon, double p1, double p2, std::uint64_t model_seed)
      : horizon_(horizon) {
    Xoshiro256pp rng(mix_seed(model_seed, 0));
    table_.resize(static_cast<std::size_t>(horizon) * 2);
    const double p[2] = {p1, p2};
    for (long t = 0; t < horizon; ++t) {
      for (int i = 0; i < 2; ++i) {
        table_[static_cast<std::size_t>(t) * 2 + i] = rng.next_double() < p[i] ? 1.0 : 0.0;
      }
    }
  }
  LossModelKind kind() const override { return LossModelKind::BernoulliStochastic; }
  long horizon() const override { return horizon_; }
  int arms() const override { return 2; }
  double loss(long t, int arm) const override {
    return table_[static_cast<std::size_t>(t - 1) * 2 + arm];
  }
  std::string name() const override { return "bernoulli"; }

 private:
  long horizon_;
  std::vector<double> table_;
};

}  // namespace

std::unique_ptr<LossModel> lower_bound_sequence(long horizon) {
  if (horizon < 100) {
    throw std::invalid_argument("lower_bound_sequence needs T >= 100 (phase 1 empty)");
  }
  return std::make_unique<LowerBoundModel>(horizon);
}

std::unique_ptr<LossModel> trivial_sequence(long horizon) {
  if (horizon < 1) throw std::invalid_argument("trivial_sequence needs T >= 1");
  return std::make_unique<TrivialModel>(horizon);
}

std::unique_ptr<LossModel> bernoulli_stochastic(long horizon, double p1, double p2,
                                                std::uint64_t model_seed) {
  if (horizon < 1) throw std::invalid_argument("bernoulli_stochastic needs T >= 1");
  if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("bernoulli_stochastic needs probabilities in [0,1]");
  }
  return std::make_unique<BernoulliModel>(horizon, p1, p2, model_seed);
}

BeliefRealization realize_beliefs(const LossModel& model, long t) {
  BeliefRealization r;
  r.outcome = 0;
  r.beliefs.resize(static_cast<std::size_t>(model.arms()));
  for (int i = 0; i < model.arms(); ++i) {
    r.beliefs[static_cast<std::size_t>(i)] = std::sqrt(model.loss(t, i));
  }
  return r;
}

PhasePlan phase_plan(long horizon) {
  if (horizon < 1000) {
    throw std::invalid_argument("phase_plan needs T >= 1000 (a sub-phase would be empty)");
  }
  PhasePlan p;
  p.t1 = horizon / 100;
  p.t2 = 2 * horizon / 10;
  p.t3 = horizon / 10;
  p.t4 = horizon - p.t1 - p.t2 - p.t3;
  p.end1 = p.t1;
  p.end2 = p.t1 + p.t2;
  p.end3 = p.t1 + p.t2 + p.t3;
  p.end4 = horizon;
  return p;
}

DerivedQuantities derived_quantities(const HyperParams& params) {
  if (params.regime != Regime::NonTrivial) {
    throw RegimeMismatch("derived_quantities needs non-trivial hyperparameters");
  }
  const auto plan = phase_plan(params.horizon);
  const double t = static_cast<double>(params.horizon);
  const double t1 = static_cast<double>(plan.t1);
  const double t2 = static_cast<double>(plan.t2);
  const double k = static_cast<double>(params.k);
  const double eta = params.eta;
  const double gamma = params.gamma;

  DerivedQuantities q;
  q.eps1 = std::sqrt(6.0 * std::log(t) / ((2.0 * gamma / k) * t1));
  q.eps2 = std::sqrt(4.0 * std::log(t) / (((3.0 - gamma) / 4.0) * t2));
  if (q.eps2 >= 1.0) {
    throw E2TooLarge("derived_quantities: eps2 >= 1, horizon too small");
  }
  q.m_exponent = (1.0 / std::log(2.0)) *
                 (std::log(2.0 * k / gamma) +
                  2.0 * (1.0 + q.eps1) * (1.0 + eta * k / gamma) * eta * t1);
  q.t_prime = (1.0 / (1.0 - q.eps2)) * (4.0 / (3.0 - gamma)) * (2.0 / eta) * q.m_exponent;
  q.t_prime_within_phase21 = q.t_prime <= t2;
  return q;
}

}  // namespace sbx
