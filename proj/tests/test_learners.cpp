#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sbx/learners.hpp"
#include "sbx/rng.hpp"

using namespace sbx;

namespace {
HyperParams raw_params(double eta, double gamma, int k, long horizon) {
  // validate_hyperparams classifies; full-information updates also run at
  // learning rates outside the bandit constraint (e.g. eta = ln 2).
  auto p = validate_hyperparams(eta, gamma, k, horizon);
  p.eta = eta;
  p.gamma = gamma;
  return p;
}

ProbVector random_simplex(Xoshiro256pp& rng, int k) {
  std::vector<double> raw(k);
  double sum = 0;
  for (auto& x : raw) {
    x = rng.next_double() + 1e-4;
    sum += x;
  }
  for (auto& x : raw) x /= sum;
  return ProbVector(std::move(raw));
}
}  // namespace

TEST_CASE("hedge_update") {
  auto s = LearnerState::make(LearnerKind::Hedge, raw_params(0.3, 0, 2, 10));
  hedge_update(s, std::vector<double>{0.7, 0.7});
  CHECK(s.probs[0] == doctest::Approx(0.5).epsilon(1e-15));

  auto s2 = LearnerState::make(LearnerKind::Hedge, raw_params(std::log(2.0), 0, 2, 10));
  hedge_update(s2, std::vector<double>{1.0, 0.0});
  CHECK(s2.probs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(s2.probs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  auto s3 = LearnerState::make(LearnerKind::Hedge, raw_params(0.2, 0, 3, 10));
  hedge_update(s3, std::vector<double>{0.1, 0.9, 0.5});
  const auto before = s3.probs;
  hedge_update(s3, std::vector<double>{0.0, 0.0, 0.0});
  for (int i = 0; i < 3; ++i) CHECK(s3.probs[i] == doctest::Approx(before[i]).epsilon(1e-14));
}

TEST_CASE("mwu_update") {
  auto s = LearnerState::make(LearnerKind::MWU, raw_params(0.5, 0, 2, 10));
  mwu_update(s, std::vector<double>{1.0, 0.0});
  CHECK(s.probs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(s.probs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  auto s2 = LearnerState::make(LearnerKind::MWU, raw_params(0.3, 0, 2, 10));
  mwu_update(s2, std::vector<double>{0.4, 0.4});
  CHECK(s2.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
  mwu_update(s2, std::vector<double>{0.0, 0.0});
  CHECK(s2.probs[0] == doctest::Approx(0.5).epsilon(1e-15));

  auto s3 = LearnerState::make(LearnerKind::MWU, raw_params(1.0, 0, 2, 10));
  CHECK_THROWS_AS(mwu_update(s3, std::vector<double>{1.0, 0.0}), std::domain_error);
}

TEST_CASE("hedge and mwu are scale invariant in the raw weights") {
  Xoshiro256pp rng(mix_seed(21, 0));
  auto s = LearnerState::make(LearnerKind::Hedge, raw_params(0.37, 0, 4, 10));
  for (int t = 0; t < 5; ++t) {
    std::vector<double> losses(4);
    for (auto& l : losses) l = rng.next_double();
    hedge_update(s, losses);
  }
  auto shifted = s;
  for (auto& lw : shifted.log_weights) lw += 123.456;  // multiply weights by e^123.456
  hedge_update(s, std::vector<double>{0.2, 0.8, 0.5, 0.1});
  hedge_update(shifted, std::vector<double>{0.2, 0.8, 0.5, 0.1});
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(s.probs[i] - shifted.probs[i]) <= 1e-12);
  }

  auto m = LearnerState::make(LearnerKind::MWU, raw_params(0.4, 0, 3, 10));
  mwu_update(m, std::vector<double>{0.3, 0.9, 0.0});
  auto scaled = m;
  for (auto& w : scaled.lin_weights) w *= 7.25;
  mwu_update(m, std::vector<double>{0.5, 0.1, 0.7});
  mwu_update(scaled, std::vector<double>{0.5, 0.1, 0.7});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(m.probs[i] - scaled.probs[i]) <= 1e-12);
}

TEST_CASE("wsu_update") {
  const ProbVector half({0.5, 0.5});
  const auto same = wsu_update(half, std::vector<double>{0.8, 0.8}, 0.3);
  CHECK(same[0] == doctest::Approx(0.5).epsilon(1e-15));

  const auto moved = wsu_update(half, std::vector<double>{1.0, 0.0}, 0.4);
  CHECK(moved[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(moved[1] == doctest::Approx(0.6).epsilon(1e-15));

  const auto corner = wsu_update(ProbVector({1.0, 0.0}), std::vector<double>{0.3, 0.9}, 0.4);
  CHECK(corner[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(corner[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("wsu_update preserves the simplex over random inputs") {
  Xoshiro256pp rng(mix_seed(7, 1));
  for (int it = 0; it < 10000; ++it) {
    const int k = 2 + int(rng.next_u64() % 4);
    const auto pi = random_simplex(rng, k);
    std::vector<double> losses(k);
    for (auto& l : losses) l = rng.next_double();
    const double eta = rng.next_in(1e-3, 0.5 - 1e-9);

    // Raw multiplicative sum, before any repair: exactly sum-preserving up to
    // rounding because the pi-weighted relative losses cancel.
    double avg = 0;
    for (int i = 0; i < k; ++i) avg += pi[i] * losses[i];
    double raw_sum = 0;
    for (int i = 0; i < k; ++i) raw_sum += pi[i] * (1.0 - eta * (losses[i] - avg));
    CHECK(std::abs(raw_sum - 1.0) <= 1e-12);

    const auto next = wsu_update(pi, losses, eta);
    CHECK(next.min_entry() > 0.0);
    CHECK(std::abs(next.sum() - 1.0) <= 1e-12);
  }
}

TEST_CASE("wswm payments") {
  const std::vector<double> m{0.5, 0.5}, r{1.0, 0.0};
  const auto pay = wswm_payments(r, m, 1, LossFn::Squared, true);
  CHECK(pay[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pay[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pay[0] + pay[1] == doctest::Approx(1.0).epsilon(1e-15));  // budget balance

  // Identical reports pay the wagers back: 1 - l + l = 1.
  const std::vector<double> same{0.3, 0.3};
  const auto pay2 = wswm_payments(same, std::vector<double>{0.2, 0.8}, 0, LossFn::Squared, true);
  CHECK(pay2[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(pay2[1] == doctest::Approx(0.8).epsilon(1e-14));

  // A single wagerer is invariant to its own report.
  const auto pay3 =
      wswm_payments(std::vector<double>{0.77, 0.1}, std::vector<double>{1.0, 0.0}, 0,
                    LossFn::Squared, true);
  CHECK(pay3[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pay3[1] == doctest::Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(
      (void)wswm_payments(r, std::vector<double>{-0.1, 1.1}, 1, LossFn::Squared, true),
      std::domain_error);

  // The verbatim printed payment uses raw wagers in the average-score term;
  // when the wagers sum to 1 both modes coincide, otherwise only the
  // normalized mode is budget-balanced.
  const auto strict_unit = wswm_payments(r, m, 1, LossFn::Squared, false);
  CHECK(strict_unit[0] == doctest::Approx(pay[0]).epsilon(1e-15));
  const std::vector<double> small{0.05, 0.05};
  const auto strict_small = wswm_payments(r, small, 1, LossFn::Squared, false);
  const auto norm_small = wswm_payments(r, small, 1, LossFn::Squared, true);
  CHECK(norm_small[0] + norm_small[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(strict_small[0] + strict_small[1] != doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("wsu_as_wagering reproduces wsu_update") {
  Xoshiro256pp rng(mix_seed(8, 2));
  for (int it = 0; it < 1000; ++it) {
    const int k = 2 + int(rng.next_u64() % 3);
    const auto pi = random_simplex(rng, k);
    std::vector<double> reports(k);
    for (auto& r : reports) r = rng.next_double();
    const int y = int(rng.next_u64() & 1);
    const double eta = rng.next_in(1e-3, 0.5 - 1e-9);

    std::vector<double> losses(k);
    for (int i = 0; i < k; ++i) losses[i] = loss_value(LossFn::Squared, reports[i], y);
    const auto direct = wsu_update(pi, losses, eta);
    const auto composed = wsu_as_wagering(pi, reports, y, eta, LossFn::Squared);
    for (int i = 0; i < k; ++i) CHECK(std::abs(direct[i] - composed[i]) <= 1e-12);
  }

  // Equal reports leave pi unchanged; eta -> 0 freezes the distribution.
  const ProbVector pi({0.3, 0.7});
  const std::vector<double> eq{0.6, 0.6};
  const auto unchanged = wsu_as_wagering(pi, eq, 1, 0.2, LossFn::Squared);
  CHECK(unchanged[0] == doctest::Approx(0.3).epsilon(1e-14));
  const std::vector<double> rep{0.9, 0.2};
  const auto frozen = wsu_as_wagering(pi, rep, 0, 1e-9, LossFn::Squared);
  CHECK(frozen[0] == doctest::Approx(0.3).epsilon(1e-7));
}

TEST_CASE("estimate_losses") {
  const std::vector<double> pt{0.5, 0.5};
  const auto est = estimate_losses(0, 1.0, pt);
  CHECK(est[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(est[1] == 0.0);

  const auto zero = estimate_losses(1, 0.0, pt);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);

  // Unbiasedness by enumeration of the draw.
  const std::vector<double> skew{0.9, 0.1};
  const std::vector<double> losses{1.0, 1.0};
  for (int j = 0; j < 2; ++j) {
    double mean = 0;
    for (int i = 0; i < 2; ++i) {
      mean += skew[i] * estimate_losses(i, losses[i], skew)[j];
    }
    CHECK(mean == doctest::Approx(losses[j]).epsilon(1e-12));
  }

  Xoshiro256pp rng(mix_seed(55, 0));
  for (int it = 0; it < 200; ++it) {
    const int k = 2 + int(rng.next_u64() % 4);
    const auto pi = random_simplex(rng, k);
    const auto pt2 = mixed_distribution(pi, rng.next_in(0.01, 0.49));
    std::vector<double> l(k);
    for (auto& x : l) x = rng.next_double();
    for (int j = 0; j < k; ++j) {
      double mean = 0;
      for (int i = 0; i < k; ++i) mean += pt2[i] * estimate_losses(i, l[i], pt2)[j];
      CHECK(std::abs(mean - l[j]) <= 1e-12);
    }
  }

  CHECK_THROWS_AS((void)estimate_losses(0, 1.0, std::vector<double>{1e-16, 1.0}),
                  std::domain_error);
}

TEST_CASE("sample_index scans cumulative sums, ties to the lower index") {
  const std::vector<double> pt{0.5, 0.5};
  CHECK(sample_index(pt, 0.0) == 0);
  CHECK(sample_index(pt, 0.25) == 0);
  CHECK(sample_index(pt, 0.5) == 0);  // boundary belongs to the lower arm
  CHECK(sample_index(pt, 0.500000001) == 1);
  CHECK(sample_index(pt, 0.9999999) == 1);

  const std::vector<double> with_hole{0.5, 0.0, 0.5};
  CHECK(sample_index(with_hole, 0.4) == 0);
  CHECK(sample_index(with_hole, 0.5) == 0);
  CHECK(sample_index(with_hole, 0.51) == 2);
}

TEST_CASE("wsu_ux_step hand-computed rounds") {
  const auto params = validate_hyperparams(0.1, 0.4, 2, 100);
  REQUIRE(params.valid());

  auto s = LearnerState::make(LearnerKind::WSU_UX, params);
  const auto rec = wsu_ux_step_forced(s, std::vector<double>{1.0, 0.0}, 0);
  // pi~ = (0.5, 0.5); lhat = (2, 0); pi'_1 = 0.5*(1 - 0.1*(2 - 1)) = 0.45.
  CHECK(rec.pi_tilde[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rec.est_losses[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.probs[0] == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(s.probs[1] == doctest::Approx(0.55).epsilon(1e-14));

  auto s2 = LearnerState::make(LearnerKind::WSU_UX, params);
  wsu_ux_step_forced(s2, std::vector<double>{1.0, 0.0}, 1);
  CHECK(s2.probs[0] == doctest::Approx(0.5).epsilon(1e-15));  // unselected zero-loss arm

  // All-zero losses never move the distribution, whatever the draw.
  auto s3 = LearnerState::make(LearnerKind::WSU_UX, params);
  Xoshiro256pp rng(mix_seed(3, 3));
  for (int t = 0; t < 50; ++t) wsu_ux_step(s3, std::vector<double>{0.0, 0.0}, rng);
  CHECK(s3.probs[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("wsu-ux multipliers stay in [1/2, 2] on valid parameters") {
  Xoshiro256pp rng(mix_seed(17, 4));
  const auto params = validate_hyperparams(0.05, 0.4, 2, 1000);
  REQUIRE(params.valid());
  auto s = LearnerState::make(LearnerKind::WSU_UX, params);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> losses{rng.next_double(), rng.next_double()};
    const auto pi_before = s.probs;
    const auto rec = wsu_ux_step(s, losses, rng);
    double avg = 0;
    for (int i = 0; i < 2; ++i) avg += pi_before[i] * rec.est_losses[i];
    for (int i = 0; i < 2; ++i) {
      const double mult = 1.0 - params.eta * (rec.est_losses[i] - avg);
      CHECK(mult >= 0.5 - 1e-12);
      CHECK(mult <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("exp3_step") {
  auto params = validate_hyperparams(0.5, 0.0, 2, 100);
  params.eta = 0.5;
  params.gamma = 0.0;

  auto s = LearnerState::make(LearnerKind::EXP3, params);
  exp3_step_forced(s, std::vector<double>{1.0, 0.0}, 0);
  // lhat = 1/0.5 = 2; new p0 = e^-1 / (e^-1 + 1).
  const double expect = std::exp(-1.0) / (std::exp(-1.0) + 1.0);
  CHECK(s.probs[0] == doctest::Approx(expect).epsilon(1e-14));

  auto s2 = LearnerState::make(LearnerKind::EXP3, params);
  Xoshiro256pp rng(mix_seed(4, 4));
  for (int t = 0; t < 20; ++t) exp3_step(s2, std::vector<double>{0.0, 0.0}, rng);
  CHECK(s2.probs[0] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(exp3_default_eta(2, 4096) ==
        doctest::Approx(std::sqrt(std::log(2.0) / (2.0 * 4096.0))).epsilon(1e-15));
}
