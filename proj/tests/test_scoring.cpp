#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sbx/rng.hpp"
#include "sbx/scoring.hpp"

using namespace sbx;

TEST_CASE("expected_loss") {
  CHECK(expected_loss(LossFn::Squared, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  // Truthful squared loss equals the outcome variance b(1-b).
  for (double b : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    CHECK(expected_loss(LossFn::Squared, b, b) ==
          doctest::Approx(b * (1.0 - b)).epsilon(1e-14));
  }
  CHECK(expected_loss(LossFn::Absolute, 0.3, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS((void)expected_loss(LossFn::Squared, 1.2, 0.5), std::domain_error);
  CHECK_THROWS_AS((void)expected_loss(LossFn::Squared, 0.5, -0.1), std::domain_error);
}

TEST_CASE("losses stay in [0,1]") {
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    for (int y : {0, 1}) {
      for (auto fn : {LossFn::Squared, LossFn::Absolute}) {
        const double l = loss_value(fn, r, y);
        CHECK(l >= 0.0);
        CHECK(l <= 1.0);
      }
    }
  }
}

TEST_CASE("expected_loss is affine in the belief") {
  Xoshiro256pp rng(mix_seed(5, 0));
  for (int it = 0; it < 500; ++it) {
    const double r = rng.next_double();
    const double b = rng.next_double();
    for (auto fn : {LossFn::Squared, LossFn::Absolute}) {
      const double direct = expected_loss(fn, r, b);
      const double affine =
          b * (loss_value(fn, r, 1) - loss_value(fn, r, 0)) + loss_value(fn, r, 0);
      CHECK(std::abs(direct - affine) <= 1e-12);
    }
  }
}

TEST_CASE("squared loss is strictly proper on grids") {
  const auto grid = unit_grid(100);
  const auto res = properness_audit(LossFn::Squared, grid, grid);
  CHECK(res.strictly_proper);
  CHECK(!res.counterexample.has_value());

  const std::vector<double> endpoints{0.0, 1.0};
  CHECK(properness_audit(LossFn::Squared, endpoints, grid).strictly_proper);
}

TEST_CASE("absolute loss fails strict properness with the b=0.4 witness") {
  const auto grid = unit_grid(100);
  const std::vector<double> beliefs{0.4};
  const auto res = properness_audit(LossFn::Absolute, beliefs, grid);
  REQUIRE(!res.strictly_proper);
  REQUIRE(res.counterexample.has_value());
  const auto& w = *res.counterexample;
  CHECK(w.belief == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(w.report == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.loss_at_report == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(w.loss_at_belief == doctest::Approx(0.48).epsilon(1e-12));

  CHECK(!properness_audit(LossFn::Absolute, grid, grid).strictly_proper);
}

TEST_CASE("squared-loss grid minimizer is the grid point nearest the belief") {
  const auto reports = unit_grid(100);  // step 0.01
  for (int i = 0; i <= 1000; ++i) {
    const double b = i / 1000.0;
    double best_r = reports[0];
    double best_l = expected_loss(LossFn::Squared, reports[0], b);
    for (double r : reports) {
      const double l = expected_loss(LossFn::Squared, r, b);
      if (l < best_l) {
        best_l = l;
        best_r = r;
      }
    }
    CHECK(std::abs(best_r - b) <= 0.005 + 1e-12);
  }
}
