#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sbx/common.hpp"

namespace sbx {

inline constexpr double kEntryFloor = -1e-12;   // below this an entry is a hard error
inline constexpr double kSumTolerance = 1e-9;   // max tolerated |sum - 1| before repair

// A point on the K-simplex. Entries are clamped/renormalized on construction;
// violations beyond the tolerances above throw HardNumericDrift.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> entries);
  static ProbVector uniform(int k);

  // Wraps entries that are already a valid distribution (verified against the
  // tolerances, but neither clamped nor renormalized, so the caller's bits
  // are preserved). Used when recording intermediate kernel quantities.
  static ProbVector trusted(std::vector<double> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }
  std::span<const double> span() const { return entries_; }

  double sum() const;
  double min_entry() const;

  bool operator==(const ProbVector& other) const = default;

 private:
  std::vector<double> entries_;
};

// Clamp tiny negatives to zero and renormalize to sum exactly 1.
// Preconditions: min(v) >= -1e-12 and |sum(v) - 1| <= 1e-9, else HardNumericDrift.
std::vector<double> simplex_repair(std::span<const double> v);

// pi~ = (1 - gamma) * pi + gamma / K.  Identity at gamma = 0; floors every
// entry at gamma / K.
ProbVector mix_uniform(const ProbVector& pi, double gamma);

enum class Regime { Invalid, Trivial, NonTrivial };

std::string to_string(Regime r);

struct HyperParams {
  double eta = 0.0;
  double gamma = 0.0;
  int k = 2;
  long horizon = 1;
  Regime regime = Regime::Invalid;

  bool valid() const { return regime != Regime::Invalid; }
};

// Classify (eta, gamma, k, horizon).
//   valid      iff eta, gamma in (0, 1/2) and eta*k/gamma <= 1/2
//   NonTrivial iff valid and eta >= T^-2/3 and gamma <= T^-1/3 (boundaries inclusive)
//   Trivial    iff valid and not NonTrivial
// Invalid is a classification, not an error.
HyperParams validate_hyperparams(double eta, double gamma, int k, long horizon);

// Seed identity of one Monte Carlo trial. Identical (base, trial_index)
// always reproduces the identical trajectory.
struct Seed {
  std::uint64_t base = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t stream() const;
};

// Everything the learner saw and did in one bandit round.
// est_losses has at most one nonzero entry, at index `chosen`.
struct RoundRecord {
  long t = 0;
  int chosen = 0;
  ProbVector pi_before;
  ProbVector pi_tilde;
  std::vector<double> est_losses;
  std::vector<double> true_losses;
};

}  // namespace sbx
