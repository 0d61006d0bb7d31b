#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "sbx/core.hpp"
#include "sbx/rng.hpp"

using namespace sbx;

TEST_CASE("hyperparameter regimes") {
  const long t = 4096;
  const double eta_cut = std::pow(double(t), -2.0 / 3.0);
  const double gamma_cut = std::pow(double(t), -1.0 / 3.0);

  // At T=4096 the canonical tuning satisfies the input constraint:
  // eta*K/gamma = 2*T^(-1/3) = 0.125 <= 1/2.
  auto p = validate_hyperparams(eta_cut, gamma_cut, 2, t);
  CHECK(p.regime == Regime::NonTrivial);

  CHECK(validate_hyperparams(0.6, 0.3, 2, 100).regime == Regime::Invalid);
  CHECK(validate_hyperparams(0.5 * eta_cut, gamma_cut, 2, t).regime == Regime::Trivial);

  // Boundaries are inclusive.
  CHECK(validate_hyperparams(eta_cut, gamma_cut * 0.5, 2, t).regime == Regime::NonTrivial);
  CHECK(validate_hyperparams(eta_cut * 0.999, gamma_cut, 2, t).regime == Regime::Trivial);
  CHECK(validate_hyperparams(eta_cut, gamma_cut * 1.001, 2, t).regime == Regime::Trivial);

  // Constraint violations are Invalid, not errors.
  CHECK(validate_hyperparams(0.3, 0.4, 2, t).regime == Regime::Invalid);  // eta*k/gamma > 1/2
  CHECK(validate_hyperparams(0.0, 0.1, 2, t).regime == Regime::Invalid);
  CHECK(validate_hyperparams(0.1, 0.5, 2, t).regime == Regime::Invalid);
}

TEST_CASE("regime predicates partition the valid grid exactly once") {
  const long t = 10000;
  const double eta_cut = std::pow(double(t), -2.0 / 3.0);
  const double gamma_cut = std::pow(double(t), -1.0 / 3.0);
  const int n = 100;
  int valid_points = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double eta = 0.5 * i / (n + 1);
      const double gamma = 0.5 * j / (n + 1);
      const auto p = validate_hyperparams(eta, gamma, 2, t);
      const bool valid = eta > 0 && eta < 0.5 && gamma > 0 && gamma < 0.5 &&
                         eta * 2 / gamma <= 0.5;
      if (!valid) {
        CHECK(p.regime == Regime::Invalid);
        continue;
      }
      valid_points += 1;
      const bool non_trivial = eta >= eta_cut && gamma <= gamma_cut;
      const bool trivial = eta < eta_cut || gamma > gamma_cut;
      CHECK(non_trivial != trivial);  // exactly one predicate holds
      CHECK(p.regime == (non_trivial ? Regime::NonTrivial : Regime::Trivial));
    }
  }
  CHECK(valid_points > 0);
}

TEST_CASE("mix_uniform") {
  const ProbVector half({0.5, 0.5});
  const auto same = mix_uniform(half, 0.2);
  CHECK(same[0] == doctest::Approx(0.5).epsilon(1e-15));

  const auto corner = mix_uniform(ProbVector({1.0, 0.0}), 0.2);
  CHECK(corner[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(corner[1] == doctest::Approx(0.1).epsilon(1e-15));

  const auto ident = mix_uniform(ProbVector({0.25, 0.75}), 0.0);
  CHECK(ident[0] == 0.25);
  CHECK(ident[1] == 0.75);

  Xoshiro256pp rng(mix_seed(1234, 0));
  for (int it = 0; it < 1000; ++it) {
    const int k = 2 + int(rng.next_u64() % 5);
    std::vector<double> raw(k);
    double sum = 0;
    for (auto& x : raw) {
      x = rng.next_double() + 1e-3;
      sum += x;
    }
    for (auto& x : raw) x /= sum;
    const double gamma = rng.next_in(0.0, 0.5);
    const auto mixed = mix_uniform(ProbVector(std::move(raw)), gamma);
    CHECK(std::abs(mixed.sum() - 1.0) <= 1e-12);
    CHECK(mixed.min_entry() >= gamma / k - 1e-15);
  }
}

TEST_CASE("simplex_repair") {
  const auto ok = simplex_repair(std::vector<double>{0.3, 0.7});
  CHECK(ok[0] == doctest::Approx(0.3).epsilon(1e-15));

  const auto clamped = simplex_repair(std::vector<double>{-1e-13, 1.0 + 1e-13});
  CHECK(clamped[0] == 0.0);
  CHECK(clamped[1] == 1.0);

  CHECK_THROWS_AS((void)simplex_repair(std::vector<double>{-1e-6, 1.000001}),
                  HardNumericDrift);
  CHECK_THROWS_AS((void)simplex_repair(std::vector<double>{0.5, 0.6}), HardNumericDrift);
}

TEST_CASE("ProbVector constructors enforce tolerances") {
  CHECK_THROWS_AS(ProbVector({-1e-6, 1.0}), HardNumericDrift);
  CHECK_THROWS_AS(ProbVector::trusted({0.6, 0.6}), HardNumericDrift);
  const auto u = ProbVector::uniform(3);
  CHECK(u.size() == 3);
  CHECK(u.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("seed mixing is reproducible and injective over trial indices") {
  const Seed a{42, 7}, b{42, 7};
  CHECK(a.stream() == b.stream());

  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    seen.insert(Seed{42, i}.stream());
  }
  CHECK(seen.size() == 100000);

  CHECK(Seed{1, 0}.stream() != Seed{2, 0}.stream());
}

TEST_CASE("xoshiro uniform draws live in [0,1)") {
  Xoshiro256pp rng(mix_seed(99, 3));
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
