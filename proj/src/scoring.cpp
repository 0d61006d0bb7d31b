#include "sbx/scoring.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sbx {

std::string to_string(LossFn fn) {
  return fn == LossFn::Squared ? "squared" : "absolute";
}

double loss_value(LossFn fn, double report, int outcome) {
  const double d = report - static_cast<double>(outcome);
  return fn == LossFn::Squared ? d * d : std::abs(d);
}

double expected_loss(LossFn fn, double report, double belief) {
  if (!(report >= 0.0 && report <= 1.0) || !(belief >= 0.0 && belief <= 1.0)) {
    throw std::domain_error("expected_loss: report and belief must lie in [0,1]");
  }
  return belief * loss_value(fn, report, 1) + (1.0 - belief) * loss_value(fn, report, 0);
}

std::vector<double> unit_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
  return g;
}

PropernessResult properness_audit(LossFn fn, std::span<const double> belief_grid,
                                  std::span<const double> report_grid) {
  PropernessResult res;
  for (double b : belief_grid) {
    double best_loss = expected_loss(fn, report_grid[0], b);
    double best_r = report_grid[0];
    for (double r : report_grid) {
      const double l = expected_loss(fn, r, b);
      if (l < best_loss) {
        best_loss = l;
        best_r = r;
      }
    }
    const double truthful = expected_loss(fn, b, b);
    // Strict properness on the grid: the truthful report must be the unique
    // minimizer, i.e. every other grid point scores strictly worse.
    bool unique = true;
    for (double r : report_grid) {
      if (r != b && expected_loss(fn, r, b) <= truthful) {
        unique = false;
        best_r = r;
        best_loss = expected_loss(fn, r, b);
        break;
      }
    }
    if (!unique || best_loss < truthful) {
      res.strictly_proper = false;
      res.counterexample = PropernessWitness{b, best_r, best_loss, truthful};
      return res;
    }
  }
  res.strictly_proper = true;
  return res;
}

}  // namespace sbx
