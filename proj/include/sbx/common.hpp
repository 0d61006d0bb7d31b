#pragma once

#include <stdexcept>
#include <string>

namespace sbx {

// Raised when a probability vector violates its numeric tolerances
// (an entry below -1e-12 or a pre-repair sum drifting past 1e-9).
// Multiplicative updates are sum-preserving in exact arithmetic, so this
// always signals an implementation bug, never an expected runtime state.
class HardNumericDrift : public std::runtime_error {
 public:
  explicit HardNumericDrift(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an analysis requires non-trivially tuned hyperparameters
// (eta >= T^-2/3 and gamma <= T^-1/3) but was given something else.
class RegimeMismatch : public std::runtime_error {
 public:
  explicit RegimeMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the horizon is too small for the eps2 correction term of the
// recovery-time analysis to be meaningful (eps2 >= 1).
class E2TooLarge : public std::runtime_error {
 public:
  explicit E2TooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sbx
