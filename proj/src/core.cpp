#include "sbx/core.hpp"

#include <cmath>
#include <cstdio>

#include "sbx/rng.hpp"

namespace sbx {

std::vector<double> simplex_repair(std::span<const double> v) {
  double sum = 0.0;
  double min_entry = v.empty() ? 0.0 : v[0];
  for (double x : v) {
    sum += x;
    if (x < min_entry) min_entry = x;
  }
  if (min_entry < kEntryFloor) {
    throw HardNumericDrift("simplex entry " + std::to_string(min_entry) +
                           " below clamp floor " + std::to_string(kEntryFloor));
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw HardNumericDrift("simplex sum drifted to " + std::to_string(sum));
  }
  std::vector<double> out(v.begin(), v.end());
  bool clamped = false;
  for (double& x : out) {
    if (x < 0.0) {
      x = 0.0;
      clamped = true;
    }
  }
  double norm = 0.0;
  if (clamped) {
    for (double x : out) norm += x;
  } else {
    norm = sum;
  }
  for (double& x : out) x /= norm;
  return out;
}

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
  entries_ = simplex_repair(entries_);
}

ProbVector ProbVector::uniform(int k) {
  return ProbVector(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

ProbVector ProbVector::trusted(std::vector<double> entries) {
  double sum = 0.0;
  double min_entry = entries.empty() ? 0.0 : entries[0];
  for (double x : entries) {
    sum += x;
    min_entry = std::min(min_entry, x);
  }
  if (min_entry < kEntryFloor || std::abs(sum - 1.0) > kSumTolerance) {
    throw HardNumericDrift("ProbVector::trusted given a non-distribution");
  }
  ProbVector p;
  p.entries_ = std::move(entries);
  return p;
}

double ProbVector::sum() const {
  double s = 0.0;
  for (double x : entries_) s += x;
  return s;
}

double ProbVector::min_entry() const {
  double m = entries_.empty() ? 0.0 : entries_[0];
  for (double x : entries_) m = std::min(m, x);
  return m;
}

ProbVector mix_uniform(const ProbVector& pi, double gamma) {
  const int k = pi.size();
  const double keep = 1.0 - gamma;
  const double floor = gamma / static_cast<double>(k);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = pi[i] * keep + floor;
  return ProbVector(std::move(out));
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Invalid: return "invalid";
    case Regime::Trivial: return "trivial";
    case Regime::NonTrivial: return "non-trivial";
  }
  return "?";
}

HyperParams validate_hyperparams(double eta, double gamma, int k, long horizon) {
  HyperParams p;
  p.eta = eta;
  p.gamma = gamma;
  p.k = k;
  p.horizon = horizon;
  const bool valid = eta > 0.0 && eta < 0.5 && gamma > 0.0 && gamma < 0.5 &&
                     eta * k / gamma <= 0.5;
  if (!valid) {
    p.regime = Regime::Invalid;
    return p;
  }
  const double t = static_cast<double>(horizon);
  const double eta_cut = std::pow(t, -2.0 / 3.0);
  const double gamma_cut = std::pow(t, -1.0 / 3.0);
  p.regime = (eta >= eta_cut && gamma <= gamma_cut) ? Regime::NonTrivial : Regime::Trivial;
  return p;
}

std::uint64_t Seed::stream() const { return mix_seed(base, trial_index); }

}  // namespace sbx
