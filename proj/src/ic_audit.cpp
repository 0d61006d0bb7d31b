#include "sbx/ic_audit.hpp"

#include <cmath>
#include <stdexcept>

#include "sbx/rng.hpp"

namespace sbx {

std::string to_string(AuditAlgo a) {
  switch (a) {
    case AuditAlgo::WSU: return "wsu";
    case AuditAlgo::WSU_UX: return "wsu-ux";
    case AuditAlgo::HedgeNormalized: return "hedge-normalized";
    case AuditAlgo::MwuNormalized: return "mwu-normalized";
  }
  return "?";
}

AuditAlgo audit_algo_from_string(const std::string& name) {
  if (name == "wsu") return AuditAlgo::WSU;
  if (name == "wsu-ux" || name == "wsu_ux") return AuditAlgo::WSU_UX;
  if (name == "hedge-normalized" || name == "hedge") return AuditAlgo::HedgeNormalized;
  if (name == "mwu-normalized" || name == "mwu") return AuditAlgo::MwuNormalized;
  throw std::invalid_argument("unknown audit algo: " + name);
}

std::string to_string(Conditioning c) {
  return c == Conditioning::ConditionalOnSelected ? "conditional-on-selected"
                                                  : "unconditional";
}

namespace {

// pi_{t+1, expert} for one realized outcome, full-information rules.
double next_prob_full_info(const AuditConfig& cfg, double report, int y) {
  const int k = cfg.pi.size();
  std::vector<double> losses(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double r = j == cfg.expert ? report
                                     : cfg.other_reports[static_cast<std::size_t>(j)];
    losses[static_cast<std::size_t>(j)] = loss_value(cfg.loss_fn, r, y);
  }
  switch (cfg.algo) {
    case AuditAlgo::WSU: {
      const ProbVector next = wsu_update(cfg.pi, losses, cfg.eta);
      return next[cfg.expert];
    }
    case AuditAlgo::HedgeNormalized: {
      double sum = 0.0;
      std::vector<double> w(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        w[static_cast<std::size_t>(j)] =
            cfg.pi[j] * std::exp(-cfg.eta * losses[static_cast<std::size_t>(j)]);
        sum += w[static_cast<std::size_t>(j)];
      }
      return w[static_cast<std::size_t>(cfg.expert)] / sum;
    }
    case AuditAlgo::MwuNormalized: {
      double sum = 0.0;
      std::vector<double> w(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) {
        w[static_cast<std::size_t>(j)] =
            cfg.pi[j] * (1.0 - cfg.eta * losses[static_cast<std::size_t>(j)]);
        sum += w[static_cast<std::size_t>(j)];
      }
      return w[static_cast<std::size_t>(cfg.expert)] / sum;
    }
    default: throw std::logic_error("bandit algo in full-info branch");
  }
}

// pi_{t+1, expert} for one realized outcome and one forced arm draw.
double next_prob_bandit_branch(const AuditConfig& cfg, double report, int y, int drawn) {
  const double r = drawn == cfg.expert ? report
                                       : cfg.other_reports[static_cast<std::size_t>(drawn)];
  const auto pt = mixed_distribution(cfg.pi, cfg.gamma);
  const auto lhat = estimate_losses(drawn, loss_value(cfg.loss_fn, r, y), pt);
  const ProbVector next = wsu_update(cfg.pi, lhat, cfg.eta);
  return next[cfg.expert];
}

double next_prob_for_outcome(const AuditConfig& cfg, double report, int y) {
  if (cfg.algo != AuditAlgo::WSU_UX) return next_prob_full_info(cfg, report, y);
  if (cfg.conditioning == Conditioning::ConditionalOnSelected) {
    return next_prob_bandit_branch(cfg, report, y, cfg.expert);
  }
  const auto pt = mixed_distribution(cfg.pi, cfg.gamma);
  double e = 0.0;
  for (int i = 0; i < cfg.pi.size(); ++i) {
    e += pt[static_cast<std::size_t>(i)] * next_prob_bandit_branch(cfg, report, y, i);
  }
  return e;
}

}  // namespace

double expected_next_prob(const AuditConfig& cfg, double report) {
  if (!(report >= 0.0 && report <= 1.0)) {
    throw std::domain_error("expected_next_prob: report must lie in [0,1]");
  }
  const double b = cfg.belief;
  return b * next_prob_for_outcome(cfg, report, 1) +
         (1.0 - b) * next_prob_for_outcome(cfg, report, 0);
}

BestResponse best_response(const AuditConfig& cfg, int grid_points) {
  if (grid_points < 101) throw std::invalid_argument("best_response needs >= 101 grid points");
  BestResponse best;
  best.r_star = 0.0;
  best.value = -1.0;
  for (int i = 0; i < grid_points; ++i) {
    const double r = static_cast<double>(i) / (grid_points - 1);
    const double v = expected_next_prob(cfg, r);
    bool take = v > best.value;
    if (v == best.value) {
      const double cur_gap = std::abs(best.r_star - cfg.belief);
      const double new_gap = std::abs(r - cfg.belief);
      take = new_gap < cur_gap || (new_gap == cur_gap && r < best.r_star);
    }
    if (take) {
      best.r_star = r;
      best.value = v;
    }
  }
  return best;
}

namespace {

// Random audit configuration. Deviations for Hedge/MWU vanish as eta -> 0,
// so eta is drawn up to 0.49 and opponents report extremes half the time.
AuditConfig random_config(AuditAlgo algo, Conditioning cond, Xoshiro256pp& rng) {
  AuditConfig cfg;
  cfg.algo = algo;
  cfg.conditioning = cond;
  cfg.loss_fn = LossFn::Squared;
  const int k = 2 + static_cast<int>(rng.next_u64() % 3);
  std::vector<double> raw(static_cast<std::size_t>(k));
  double sum = 0.0;
  for (auto& x : raw) {
    x = rng.next_in(0.02, 1.0);
    sum += x;
  }
  for (auto& x : raw) x /= sum;
  cfg.pi = ProbVector(std::move(raw));
  cfg.expert = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(k));
  cfg.belief = rng.next_double();
  cfg.other_reports.resize(static_cast<std::size_t>(k));
  for (auto& r : cfg.other_reports) {
    r = (rng.next_u64() & 1) ? (rng.next_u64() & 1 ? 1.0 : 0.0) : rng.next_double();
  }
  if (algo == AuditAlgo::WSU_UX) {
    // Honor the bandit input constraint eta * K / gamma <= 1/2.
    cfg.gamma = rng.next_in(0.05, 0.49);
    cfg.eta = rng.next_in(0.005, cfg.gamma / (2.0 * k));
  } else {
    cfg.gamma = 0.0;
    cfg.eta = rng.next_in(0.05, 0.49);
  }
  return cfg;
}

}  // namespace

IcVerdict ic_verdict(AuditAlgo algo, Conditioning cond, long n_configs, int grid_points,
                     std::uint64_t seed) {
  IcVerdict v;
  v.n_configs = n_configs;
  v.grid_points = grid_points;
  v.grid_step = 1.0 / (grid_points - 1);
  v.max_deviation = -1.0;
  Xoshiro256pp rng(mix_seed(seed, 0));
  for (long c = 0; c < n_configs; ++c) {
    const AuditConfig cfg = random_config(algo, cond, rng);
    const BestResponse br = best_response(cfg, grid_points);
    const double dev = std::abs(br.r_star - cfg.belief);
    if (dev > v.max_deviation) {
      v.max_deviation = dev;
      v.worst_config = cfg;
      v.worst_r_star = br.r_star;
    }
  }
  v.truthful = v.max_deviation <= v.grid_step;
  return v;
}

}  // namespace sbx
