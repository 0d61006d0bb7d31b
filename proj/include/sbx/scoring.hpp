#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sbx {

// Binary-outcome loss functions on (report, outcome). Both map into [0, 1].
// Squared loss is strictly proper; absolute loss is kept only as the
// non-proper contrast and no learner runs on it.
enum class LossFn { Squared, Absolute };

std::string to_string(LossFn fn);

// fn(r, y) for r in [0,1], y in {0,1}.
double loss_value(LossFn fn, double report, int outcome);

// b * fn(r,1) + (1-b) * fn(r,0). Throws std::domain_error outside [0,1]^2.
double expected_loss(LossFn fn, double report, double belief);

struct PropernessWitness {
  double belief = 0.0;
  double report = 0.0;           // grid minimizer that beats (or ties) truthful reporting
  double loss_at_report = 0.0;
  double loss_at_belief = 0.0;
};

struct PropernessResult {
  bool strictly_proper = false;
  std::optional<PropernessWitness> counterexample;  // set iff not strictly proper
};

// Grid audit of strict properness: for every b in belief_grid, the argmin of
// expected_loss over report_grid must be uniquely the grid point(s) equal to b.
// Grids must contain their own beliefs.
PropernessResult properness_audit(LossFn fn, std::span<const double> belief_grid,
                                  std::span<const double> report_grid);

// Evenly spaced grid {0, 1/n, ..., 1} with n+1 points.
std::vector<double> unit_grid(int n);

}  // namespace sbx
