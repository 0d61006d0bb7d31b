#pragma once

// Batched WSU-UX trial runner, templated over the lane pack. Each lane runs
// one seeded trial; all lanes advance through the same deterministic loss table
// in lockstep. The scalar instantiation is the reference; the AVX2 one must
// match it bit-for-bit (see tests/test_kernels.cpp).

#include <cmath>
#include <span>
#include <vector>

#include "sbx/core.hpp"
#include "sbx/kernels/pack.hpp"
#include "sbx/rng.hpp"
#include "sbx/trajectory.hpp"

namespace sbx::kernels {

// Everything a batch run needs, precomputed once per monte_carlo call.
struct BatchSpec {
  const double* loss_table = nullptr;  // row-major [T x K] true losses
  long horizon = 0;
  int arms = 2;
  double eta = 0.0;
  double gamma = 0.0;
  int best_arm = 0;
  long phase1_cut = 0;   // floor(T/100); pull counting + monotonicity boundary
  long probe_t1 = 0;     // 0 disables a probe
  long probe_t1p1 = 0;
  long probe_t1t2p1 = 0;
  double m_exponent = 0.0;  // for event E1; NaN when undefined
  std::vector<long> snapshot_rounds;  // sorted; state indices in [1, T+1]
};

template <class P>
void run_wsu_ux_batch(const BatchSpec& spec, std::span<const Seed> seeds,
                      std::span<Trajectory> out) {
  using F = typename P::F;
  using M = typename P::M;
  constexpr int W = P::width;

  const long t_max = spec.horizon;
  const int k = spec.arms;
  const double eta_s = spec.eta;
  const double gamma_s = spec.gamma;

  // Seed one xoshiro stream per lane, scalar-side, then transpose into lanes.
  std::uint64_t state_words[4][W];
  for (int lane = 0; lane < W; ++lane) {
    Xoshiro256pp g(seeds[static_cast<std::size_t>(lane)].stream());
    for (int w = 0; w < 4; ++w) state_words[w][lane] = g.state()[w];
  }
  XoshiroLanes<P> rng{P::uload(state_words[0]), P::uload(state_words[1]),
                      P::uload(state_words[2]), P::uload(state_words[3])};

  const F one = P::fbroadcast(1.0);
  const F zero = P::fzero();
  const F eta = P::fbroadcast(eta_s);
  const F keep = P::fbroadcast(1.0 - gamma_s);
  const F floor_ = P::fbroadcast(gamma_s / static_cast<double>(k));

  std::vector<F> pi(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pi[static_cast<std::size_t>(i)] = P::fbroadcast(1.0 / k);
  std::vector<F> pt(static_cast<std::size_t>(k));
  std::vector<M> chosen(static_cast<std::size_t>(k));

  F regret = zero, second = zero, bias = zero, pulls = zero;
  F max_drift = zero;
  F min_entry = P::fbroadcast(1.0 / k);
  F min_mult = P::fbroadcast(1.0), max_mult = P::fbroadcast(1.0);
  F min_rel1 = zero, max_rel1 = zero;
  F probe_t1_v = P::fbroadcast(std::nan("")), probe_t1p1_v = P::fbroadcast(std::nan("")),
    probe_t1t2p1_v = P::fbroadcast(std::nan(""));
  M monotone = P::mnot(P::mfalse());

  double snap_buf[W];
  std::size_t next_snap = 0;
  auto capture_paths = [&](long state_round, F pi0) {
    P::fstore(snap_buf, pi0);
    for (int lane = 0; lane < W; ++lane) {
      out[static_cast<std::size_t>(lane)].pi1_path.emplace_back(state_round, snap_buf[lane]);
    }
  };
  for (auto& traj : out) {
    traj.pi1_path.clear();
    traj.pi1_path.reserve(spec.snapshot_rounds.size());
  }

  for (long t = 1; t <= t_max; ++t) {
    // State snapshots and probes describe pi at the *start* of round t.
    while (next_snap < spec.snapshot_rounds.size() && spec.snapshot_rounds[next_snap] == t) {
      capture_paths(t, pi[0]);
      ++next_snap;
    }
    if (t == spec.probe_t1) probe_t1_v = pi[0];
    if (t == spec.probe_t1p1) probe_t1p1_v = pi[0];
    if (t == spec.probe_t1t2p1) probe_t1t2p1_v = pi[0];

    const double* row = spec.loss_table + static_cast<std::size_t>(t - 1) * k;
    const F u = rng.next_double();

    // Mixed distribution and inverse-CDF draw (ties to the lower index).
    F cum = zero;
    M found = P::mfalse();
    for (int i = 0; i < k; ++i) {
      pt[static_cast<std::size_t>(i)] = P::add(P::mul(pi[static_cast<std::size_t>(i)], keep), floor_);
      cum = P::add(cum, pt[static_cast<std::size_t>(i)]);
      const M hit = P::mand(P::le(u, cum), P::mnot(found));
      chosen[static_cast<std::size_t>(i)] = hit;
      found = P::mor(found, hit);
    }
    chosen[static_cast<std::size_t>(k - 1)] =
        P::mor(chosen[static_cast<std::size_t>(k - 1)], P::mnot(found));

    // Importance-weighted estimate of the chosen arm and pi-weighted average.
    F lhat = zero, avg = zero, mix_gap = zero;
    for (int i = 0; i < k; ++i) {
      const F li = P::fbroadcast(row[i]);
      const F cand = P::div(li, pt[static_cast<std::size_t>(i)]);
      const M m = chosen[static_cast<std::size_t>(i)];
      lhat = P::select(m, cand, lhat);
      avg = P::select(m, P::mul(pi[static_cast<std::size_t>(i)], cand), avg);
      mix_gap = P::select(
          m, P::sub(pt[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(i)]), mix_gap);
    }

    // Diagnostics and accumulators.
    const F lhat0 = P::select(chosen[0], lhat, zero);
    const F d0 = P::sub(lhat0, avg);
    second = P::add(second, P::mul(d0, d0));
    const F rel1 = P::mul(eta, d0);
    min_rel1 = P::fmin(min_rel1, rel1);
    max_rel1 = P::fmax(max_rel1, rel1);
    bias = P::add(bias, P::mul(mix_gap, lhat));
    F dot = zero;
    for (int i = 0; i < k; ++i) {
      dot = P::add(dot, P::mul(pt[static_cast<std::size_t>(i)], P::fbroadcast(row[i])));
    }
    regret = P::add(regret, P::sub(dot, P::fbroadcast(row[spec.best_arm])));
    if (t <= spec.phase1_cut) {
      pulls = P::add(pulls, P::select(chosen[0], one, zero));
    }

    // Multiplicative update, clamp, renormalize.
    const F pi0_old = pi[0];
    for (int i = 0; i < k; ++i) {
      const F lhat_i = P::select(chosen[static_cast<std::size_t>(i)], lhat, zero);
      const F mult = P::sub(one, P::mul(eta, P::sub(lhat_i, avg)));
      min_mult = P::fmin(min_mult, mult);
      max_mult = P::fmax(max_mult, mult);
      pi[static_cast<std::size_t>(i)] = P::mul(pi[static_cast<std::size_t>(i)], mult);
    }
    F sum = zero;
    for (int i = 0; i < k; ++i) {
      F& x = pi[static_cast<std::size_t>(i)];
      min_entry = P::fmin(min_entry, x);
      x = P::select(P::lt(x, zero), zero, x);
      sum = P::add(sum, x);
    }
    max_drift = P::fmax(max_drift, P::fabs_(P::sub(sum, one)));
    for (int i = 0; i < k; ++i) {
      pi[static_cast<std::size_t>(i)] = P::div(pi[static_cast<std::size_t>(i)], sum);
    }
    if (t > spec.phase1_cut) {
      monotone = P::mand(monotone, P::ge(pi[0], pi0_old));
    }
  }

  while (next_snap < spec.snapshot_rounds.size() &&
         spec.snapshot_rounds[next_snap] == t_max + 1) {
    capture_paths(t_max + 1, pi[0]);
    ++next_snap;
  }

  // Unpack lanes into trajectories.
  double regret_b[W], second_b[W], bias_b[W], pulls_b[W], drift_b[W], minent_b[W];
  double minmult_b[W], maxmult_b[W], minrel_b[W], maxrel_b[W];
  double pt1_b[W], pt1p1_b[W], pt1t2_b[W], final_b[W];
  bool mono_b[W];
  P::fstore(regret_b, regret);
  P::fstore(second_b, second);
  P::fstore(bias_b, bias);
  P::fstore(pulls_b, pulls);
  P::fstore(drift_b, max_drift);
  P::fstore(minent_b, min_entry);
  P::fstore(minmult_b, min_mult);
  P::fstore(maxmult_b, max_mult);
  P::fstore(minrel_b, min_rel1);
  P::fstore(maxrel_b, max_rel1);
  P::fstore(pt1_b, probe_t1_v);
  P::fstore(pt1p1_b, probe_t1p1_v);
  P::fstore(pt1t2_b, probe_t1t2p1_v);
  P::fstore(final_b, pi[0]);
  P::mstore(mono_b, monotone);

  for (int lane = 0; lane < W; ++lane) {
    Trajectory& tr = out[static_cast<std::size_t>(lane)];
    tr.seed = seeds[static_cast<std::size_t>(lane)];
    tr.horizon = t_max;
    tr.pseudo_regret = regret_b[lane];
    tr.second_moment_sum = second_b[lane];
    tr.bias_sum = bias_b[lane];
    tr.pi_final = final_b[lane];
    tr.ln_pi_final = std::log(final_b[lane]);
    tr.pi_at_t1 = pt1_b[lane];
    tr.pi_at_t1_plus_1 = pt1p1_b[lane];
    tr.pi_at_t1t2_plus_1 = pt1t2_b[lane];
    tr.arm1_pulls_phase1 = static_cast<long>(pulls_b[lane]);
    tr.max_sum_drift = drift_b[lane];
    tr.min_entry = minent_b[lane];
    tr.min_multiplier = minmult_b[lane];
    tr.max_multiplier = maxmult_b[lane];
    tr.min_rel_loss1 = minrel_b[lane];
    tr.max_rel_loss1 = maxrel_b[lane];
    tr.phase2_monotone = mono_b[lane];
    tr.event_e1 = !std::isnan(spec.m_exponent) && !std::isnan(pt1p1_b[lane]) &&
                  pt1p1_b[lane] >= std::exp2(-spec.m_exponent);
    tr.event_e2 = !std::isnan(pt1t2_b[lane]) && pt1t2_b[lane] >= 0.25;
    tr.event_recovered = final_b[lane] >= 0.75;
    if (tr.min_entry < kEntryFloor) {
      throw HardNumericDrift("trial (base=" + std::to_string(tr.seed.base) +
                             ", index=" + std::to_string(tr.seed.trial_index) +
                             "): entry " + std::to_string(tr.min_entry) + " below floor");
    }
    if (tr.max_sum_drift > kSumTolerance) {
      throw HardNumericDrift("trial (base=" + std::to_string(tr.seed.base) +
                             ", index=" + std::to_string(tr.seed.trial_index) +
                             "): simplex sum drift " + std::to_string(tr.max_sum_drift));
    }
  }
}

}  // namespace sbx::kernels
