#include "sbx/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbx {

std::string to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::Hedge: return "hedge";
    case LearnerKind::MWU: return "mwu";
    case LearnerKind::WSU: return "wsu";
    case LearnerKind::WSU_UX: return "wsu-ux";
    case LearnerKind::EXP3: return "exp3";
  }
  return "?";
}

LearnerKind learner_from_string(const std::string& name) {
  if (name == "hedge") return LearnerKind::Hedge;
  if (name == "mwu") return LearnerKind::MWU;
  if (name == "wsu") return LearnerKind::WSU;
  if (name == "wsu-ux" || name == "wsu_ux") return LearnerKind::WSU_UX;
  if (name == "exp3") return LearnerKind::EXP3;
  throw std::invalid_argument("unknown learner: " + name);
}

bool is_bandit(LearnerKind k) { return k == LearnerKind::WSU_UX || k == LearnerKind::EXP3; }

LearnerState LearnerState::make(LearnerKind kind, const HyperParams& params) {
  LearnerState s;
  s.kind = kind;
  s.params = params;
  s.t = 1;
  s.probs = ProbVector::uniform(params.k);
  const auto n = static_cast<std::size_t>(params.k);
  if (kind == LearnerKind::Hedge || kind == LearnerKind::EXP3) {
    s.log_weights.assign(n, -std::log(static_cast<double>(params.k)));
  }
  if (kind == LearnerKind::MWU) {
    s.lin_weights.assign(n, 1.0 / params.k);
  }
  return s;
}

namespace {

ProbVector normalize_log_weights(std::span<const double> log_w) {
  const double m = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(log_w.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    w[i] = std::exp(log_w[i] - m);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return ProbVector::trusted(std::move(w));
}

ProbVector normalize_linear_weights(std::span<const double> w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  if (!(sum > 0.0)) throw HardNumericDrift("weight sum not positive");
  std::vector<double> p(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = w[i] / sum;
  return ProbVector::trusted(std::move(p));
}

}  // namespace

void hedge_update(LearnerState& state, std::span<const double> losses) {
  const double eta = state.params.eta;
  for (std::size_t i = 0; i < state.log_weights.size(); ++i) {
    state.log_weights[i] -= eta * losses[i];
  }
  state.probs = normalize_log_weights(state.log_weights);
  state.t += 1;
}

void mwu_update(LearnerState& state, std::span<const double> losses) {
  const double eta = state.params.eta;
  for (std::size_t i = 0; i < state.lin_weights.size(); ++i) {
    const double mult = 1.0 - eta * losses[i];
    if (!(mult > 0.0)) throw std::domain_error("mwu_update requires eta * loss < 1");
    state.lin_weights[i] *= mult;
  }
  if (state.t % kMwuRenormStride == 0) {
    double sum = 0.0;
    for (double x : state.lin_weights) sum += x;
    for (double& x : state.lin_weights) x /= sum;
  }
  state.probs = normalize_linear_weights(state.lin_weights);
  state.t += 1;
}

ProbVector wsu_update(const ProbVector& pi, std::span<const double> losses, double eta) {
  const int k = pi.size();
  double avg = 0.0;
  for (int i = 0; i < k; ++i) avg += pi[i] * losses[static_cast<std::size_t>(i)];
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out[static_cast<std::size_t>(i)] =
        pi[i] * (1.0 - eta * (losses[static_cast<std::size_t>(i)] - avg));
  }
  return ProbVector(std::move(out));
}

std::vector<double> wswm_payments(std::span<const double> reports,
                                  std::span<const double> wagers, int outcome, LossFn fn,
                                  bool normalize_wagers) {
  const std::size_t k = reports.size();
  double wager_sum = 0.0;
  for (double m : wagers) {
    if (m < 0.0) throw std::domain_error("wswm_payments: negative wager");
    wager_sum += m;
  }
  double avg = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double weight = normalize_wagers ? wagers[j] / wager_sum : wagers[j];
    avg += weight * loss_value(fn, reports[j], outcome);
  }
  std::vector<double> pay(k);
  for (std::size_t i = 0; i < k; ++i) {
    pay[i] = wagers[i] * (1.0 - loss_value(fn, reports[i], outcome) + avg);
  }
  return pay;
}

ProbVector wsu_as_wagering(const ProbVector& pi, std::span<const double> reports,
                           int outcome, double eta, LossFn fn) {
  const int k = pi.size();
  std::vector<double> wagers(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) wagers[static_cast<std::size_t>(i)] = eta * pi[i];
  const auto pay = wswm_payments(reports, wagers, outcome, fn, /*normalize_wagers=*/true);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    out[static_cast<std::size_t>(i)] = pay[static_cast<std::size_t>(i)] + (1.0 - eta) * pi[i];
  }
  return ProbVector(std::move(out));
}

int sample_index(std::span<const double> pi_tilde, double u) {
  double cum = 0.0;
  const int k = static_cast<int>(pi_tilde.size());
  for (int i = 0; i < k; ++i) {
    cum += pi_tilde[static_cast<std::size_t>(i)];
    if (u <= cum) return i;
  }
  return k - 1;
}

std::vector<double> estimate_losses(int chosen, double loss_value,
                                    std::span<const double> pi_tilde) {
  const double denom = pi_tilde[static_cast<std::size_t>(chosen)];
  if (denom < 1e-15) {
    throw std::domain_error("estimate_losses: selection probability vanished");
  }
  std::vector<double> out(pi_tilde.size(), 0.0);
  out[static_cast<std::size_t>(chosen)] = loss_value / denom;
  return out;
}

std::vector<double> mixed_distribution(const ProbVector& pi, double gamma) {
  const int k = pi.size();
  const double keep = 1.0 - gamma;
  const double floor = gamma / static_cast<double>(k);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = pi[i] * keep + floor;
  return out;
}

RoundRecord wsu_ux_step_forced(LearnerState& state, std::span<const double> true_losses,
                               int chosen) {
  RoundRecord rec;
  rec.t = state.t;
  rec.chosen = chosen;
  rec.pi_before = state.probs;
  auto pt = mixed_distribution(state.probs, state.params.gamma);
  rec.est_losses = estimate_losses(chosen, true_losses[static_cast<std::size_t>(chosen)], pt);
  rec.true_losses.assign(true_losses.begin(), true_losses.end());
  state.probs = wsu_update(state.probs, rec.est_losses, state.params.eta);
  rec.pi_tilde = ProbVector::trusted(std::move(pt));
  state.t += 1;
  return rec;
}

RoundRecord exp3_step_forced(LearnerState& state, std::span<const double> true_losses,
                             int chosen) {
  RoundRecord rec;
  rec.t = state.t;
  rec.chosen = chosen;
  rec.pi_before = state.probs;
  auto pt = mixed_distribution(state.probs, state.params.gamma);
  rec.est_losses = estimate_losses(chosen, true_losses[static_cast<std::size_t>(chosen)], pt);
  rec.true_losses.assign(true_losses.begin(), true_losses.end());
  state.log_weights[static_cast<std::size_t>(chosen)] -=
      state.params.eta * rec.est_losses[static_cast<std::size_t>(chosen)];
  state.probs = normalize_log_weights(state.log_weights);
  rec.pi_tilde = ProbVector::trusted(std::move(pt));
  state.t += 1;
  return rec;
}

RoundRecord wsu_ux_step(LearnerState& state, std::span<const double> true_losses,
                        Xoshiro256pp& rng) {
  const auto pt = mixed_distribution(state.probs, state.params.gamma);
  return wsu_ux_step_forced(state, true_losses, sample_index(pt, rng.next_double()));
}

RoundRecord exp3_step(LearnerState& state, std::span<const double> true_losses,
                      Xoshiro256pp& rng) {
  const auto pt = mixed_distribution(state.probs, state.params.gamma);
  return exp3_step_forced(state, true_losses, sample_index(pt, rng.next_double()));
}

double exp3_default_eta(int k, long horizon) {
  return std::sqrt(std::log(static_cast<double>(k)) /
                   (static_cast<double>(k) * static_cast<double>(horizon)));
}

}  // namespace sbx
