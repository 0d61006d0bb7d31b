#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sbx/ic_audit.hpp"
#include "sbx/rng.hpp"

using namespace sbx;

namespace {
AuditConfig base_config(AuditAlgo algo) {
  AuditConfig cfg;
  cfg.algo = algo;
  cfg.pi = ProbVector({0.5, 0.5});
  cfg.eta = 0.4;
  cfg.gamma = 0.0;
  cfg.other_reports = {0.0, 0.0};
  cfg.belief = 1.0;
  cfg.expert = 0;
  cfg.loss_fn = LossFn::Squared;
  return cfg;
}
}  // namespace

TEST_CASE("expected_next_prob for WSU, hand-evaluated branch") {
  // b = 1 forces y = 1: losses (0, 1), average 0.5,
  // pi'_1 = 0.5 (1 - 0.4 (0 - 0.5)) = 0.6.
  auto cfg = base_config(AuditAlgo::WSU);
  CHECK(expected_next_prob(cfg, 1.0) == doctest::Approx(0.6).epsilon(1e-14));

  // eta -> 0: no update, any report.
  cfg.eta = 1e-12;
  for (double r : {0.0, 0.4, 1.0}) {
    CHECK(std::abs(expected_next_prob(cfg, r) - 0.5) <= 1e-9);
  }
}

TEST_CASE("expected_next_prob for conditional WSU-UX, hand-evaluated") {
  AuditConfig cfg;
  cfg.algo = AuditAlgo::WSU_UX;
  cfg.pi = ProbVector({0.5, 0.5});
  cfg.eta = 0.1;
  cfg.gamma = 0.4;
  cfg.other_reports = {0.0, 0.3};
  cfg.belief = 0.7;
  cfg.expert = 0;
  cfg.conditioning = Conditioning::ConditionalOnSelected;
  // pi~_0 = 0.5; E = sum_y w_y * 0.5 (1 - 0.1 ((r-y)^2/0.5)(1 - 0.5)).
  CHECK(expected_next_prob(cfg, 1.0) == doctest::Approx(0.485).epsilon(1e-14));
  CHECK(expected_next_prob(cfg, 0.3) == doctest::Approx(0.4815).epsilon(1e-14));
}

TEST_CASE("bandit audit agrees with brute-force enumeration over forced steps") {
  Xoshiro256pp rng(mix_seed(31, 0));
  for (int it = 0; it < 100; ++it) {
    const int k = 2 + int(rng.next_u64() % 3);
    std::vector<double> raw(k);
    double sum = 0;
    for (auto& x : raw) {
      x = rng.next_double() + 0.05;
      sum += x;
    }
    for (auto& x : raw) x /= sum;

    AuditConfig cfg;
    cfg.algo = AuditAlgo::WSU_UX;
    cfg.pi = ProbVector(raw);
    cfg.gamma = rng.next_in(0.1, 0.49);
    cfg.eta = rng.next_in(0.005, cfg.gamma / (2 * k));
    cfg.belief = rng.next_double();
    cfg.expert = int(rng.next_u64() % k);
    cfg.other_reports.resize(k);
    for (auto& r : cfg.other_reports) r = rng.next_double();
    cfg.conditioning =
        (rng.next_u64() & 1) ? Conditioning::Unconditional : Conditioning::ConditionalOnSelected;
    const double report = rng.next_double();

    // Independent route: realize each (y, drawn arm) branch through the
    // learner stepping machinery and weigh by its probability.
    auto params = validate_hyperparams(cfg.eta, cfg.gamma, k, 1000);
    params.eta = cfg.eta;
    params.gamma = cfg.gamma;
    double expectation = 0.0;
    for (int y = 0; y <= 1; ++y) {
      const double wy = y == 1 ? cfg.belief : 1.0 - cfg.belief;
      const auto pt = mixed_distribution(cfg.pi, cfg.gamma);
      if (cfg.conditioning == Conditioning::ConditionalOnSelected) {
        LearnerState s = LearnerState::make(LearnerKind::WSU_UX, params);
        s.probs = cfg.pi;
        std::vector<double> losses(k, 0.0);
        losses[cfg.expert] = loss_value(cfg.loss_fn, report, y);
        wsu_ux_step_forced(s, losses, cfg.expert);
        expectation += wy * s.probs[cfg.expert];
      } else {
        for (int drawn = 0; drawn < k; ++drawn) {
          LearnerState s = LearnerState::make(LearnerKind::WSU_UX, params);
          s.probs = cfg.pi;
          std::vector<double> losses(k, 0.0);
          const double r = drawn == cfg.expert ? report : cfg.other_reports[drawn];
          losses[drawn] = loss_value(cfg.loss_fn, r, y);
          wsu_ux_step_forced(s, losses, drawn);
          expectation += wy * pt[drawn] * s.probs[cfg.expert];
        }
      }
    }
    CHECK(std::abs(expected_next_prob(cfg, report) - expectation) <= 1e-12);
  }
}

TEST_CASE("expected_next_prob is affine in the belief") {
  Xoshiro256pp rng(mix_seed(32, 0));
  for (auto algo : {AuditAlgo::WSU, AuditAlgo::HedgeNormalized, AuditAlgo::MwuNormalized,
                    AuditAlgo::WSU_UX}) {
    for (int it = 0; it < 50; ++it) {
      AuditConfig cfg = base_config(algo);
      if (algo == AuditAlgo::WSU_UX) {
        cfg.gamma = 0.4;
        cfg.eta = 0.05;
      }
      cfg.other_reports = {rng.next_double(), rng.next_double()};
      const double report = rng.next_double();
      const double b1 = rng.next_double(), b2 = rng.next_double();
      cfg.belief = b1;
      const double e1 = expected_next_prob(cfg, report);
      cfg.belief = b2;
      const double e2 = expected_next_prob(cfg, report);
      cfg.belief = 0.5 * (b1 + b2);
      const double mid = expected_next_prob(cfg, report);
      CHECK(std::abs(mid - 0.5 * (e1 + e2)) <= 1e-12);
    }
  }
}

TEST_CASE("unconditional equals conditional for full-information rules") {
  Xoshiro256pp rng(mix_seed(33, 0));
  for (auto algo : {AuditAlgo::WSU, AuditAlgo::HedgeNormalized, AuditAlgo::MwuNormalized}) {
    for (int it = 0; it < 30; ++it) {
      AuditConfig cfg = base_config(algo);
      cfg.eta = rng.next_in(0.05, 0.49);
      cfg.belief = rng.next_double();
      cfg.other_reports = {rng.next_double(), rng.next_double()};
      const double report = rng.next_double();
      cfg.conditioning = Conditioning::ConditionalOnSelected;
      const double a = expected_next_prob(cfg, report);
      cfg.conditioning = Conditioning::Unconditional;
      const double b = expected_next_prob(cfg, report);
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("WSU response curve is a concave quadratic with vertex at the belief") {
  Xoshiro256pp rng(mix_seed(34, 0));
  const double h = 1e-4;
  for (int it = 0; it < 100; ++it) {
    AuditConfig cfg = base_config(AuditAlgo::WSU);
    std::vector<double> raw{rng.next_in(0.1, 0.9), 0.0};
    raw[1] = 1.0 - raw[0];
    cfg.pi = ProbVector(raw);
    cfg.eta = rng.next_in(0.05, 0.49);
    cfg.belief = rng.next_in(0.05, 0.95);
    cfg.other_reports = {rng.next_double(), rng.next_double()};

    const double at_b = expected_next_prob(cfg, cfg.belief);
    const double up = expected_next_prob(cfg, cfg.belief + h);
    const double dn = expected_next_prob(cfg, cfg.belief - h);
    const double first = (up - dn) / (2 * h);
    const double second = (up - 2 * at_b + dn) / (h * h);
    CHECK(std::abs(first) <= 1e-8);
    CHECK(second <= 1e-8);
  }
}

TEST_CASE("best_response: WSU and conditional WSU-UX are truthful on the grid") {
  Xoshiro256pp rng(mix_seed(35, 0));
  for (int it = 0; it < 100; ++it) {
    AuditConfig cfg = base_config(AuditAlgo::WSU);
    cfg.eta = rng.next_in(0.05, 0.49);
    cfg.belief = rng.next_double();
    cfg.other_reports = {rng.next_double(), rng.next_double()};
    const auto br = best_response(cfg, 1001);
    CHECK(std::abs(br.r_star - cfg.belief) <= 1e-3);

    AuditConfig ux = cfg;
    ux.algo = AuditAlgo::WSU_UX;
    ux.gamma = rng.next_in(0.05, 0.49);
    ux.eta = rng.next_in(0.005, ux.gamma / 4.0);
    ux.conditioning = Conditioning::ConditionalOnSelected;
    const auto brux = best_response(ux, 1001);
    CHECK(std::abs(brux.r_star - ux.belief) <= 1e-3);
  }
}

TEST_CASE("normalized MWU misreports") {
  // At pi = (0.5, 0.5), eta = 0.45, b = 0.5, opponent at 1.0 the best
  // response shifts to ~0.51: not truthful, though the gap is small.
  AuditConfig cfg = base_config(AuditAlgo::MwuNormalized);
  cfg.eta = 0.45;
  cfg.belief = 0.5;
  cfg.other_reports = {0.0, 1.0};
  const auto br = best_response(cfg, 1001);
  CHECK(std::abs(br.r_star - 0.5) >= 0.005);

  // Skewed weights push the deviation past 0.05.
  AuditConfig skew = cfg;
  skew.pi = ProbVector({0.9, 0.1});
  skew.eta = 0.49;
  const auto br2 = best_response(skew, 1001);
  CHECK(std::abs(br2.r_star - 0.5) >= 0.05);
}

TEST_CASE("ic_verdict matches the known truthfulness results") {
  const auto wsu =
      ic_verdict(AuditAlgo::WSU, Conditioning::ConditionalOnSelected, 200, 1001, 2024);
  CHECK(wsu.truthful);
  CHECK(wsu.max_deviation <= 1e-3);

  const auto ux =
      ic_verdict(AuditAlgo::WSU_UX, Conditioning::ConditionalOnSelected, 200, 1001, 2024);
  CHECK(ux.truthful);
  CHECK(ux.max_deviation <= 1e-3);

  const auto hedge = ic_verdict(AuditAlgo::HedgeNormalized,
                                Conditioning::ConditionalOnSelected, 200, 1001, 2024);
  CHECK(!hedge.truthful);
  CHECK(hedge.max_deviation > 0.05);

  const auto mwu = ic_verdict(AuditAlgo::MwuNormalized, Conditioning::ConditionalOnSelected,
                              200, 1001, 2024);
  CHECK(!mwu.truthful);
  CHECK(mwu.max_deviation > 0.05);
}
