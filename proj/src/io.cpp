#include "sbx/io.hpp"

#include <cmath>
#include <cstdio>

#include "sbx/environments.hpp"

namespace sbx {

std::string format_double17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

const char* const kRunCsvHeader =
    "schema_version,trial,seed,T,eta,gamma,learner,env,pseudo_regret,ln_pi_final,"
    "pi_T1,pi_T1T2,e1,e2,recovered,second_moment_sum,bias_sum,arm1_pulls_phase1";

std::string run_csv(const std::vector<RunBlock>& blocks) {
  std::string out(kRunCsvHeader);
  out += '\n';
  for (const auto& b : blocks) {
    long trial = 0;
    for (const auto& tr : *b.trials) {
      out += std::to_string(kCsvSchemaVersion);
      out += ',';
      out += std::to_string(trial++);
      out += ',';
      out += std::to_string(tr.seed.stream());
      out += ',';
      out += std::to_string(b.horizon);
      out += ',';
      out += format_double17(b.eta);
      out += ',';
      out += format_double17(b.gamma);
      out += ',';
      out += b.learner;
      out += ',';
      out += b.env;
      out += ',';
      out += format_double17(tr.pseudo_regret);
      out += ',';
      out += format_double17(tr.ln_pi_final);
      out += ',';
      out += format_double17(tr.pi_at_t1_plus_1);
      out += ',';
      out += format_double17(tr.pi_at_t1t2_plus_1);
      out += ',';
      out += tr.event_e1 ? '1' : '0';
      out += ',';
      out += tr.event_e2 ? '1' : '0';
      out += ',';
      out += tr.event_recovered ? '1' : '0';
      out += ',';
      out += format_double17(tr.second_moment_sum);
      out += ',';
      out += format_double17(tr.bias_sum);
      out += ',';
      out += std::to_string(tr.arm1_pulls_phase1);
      out += '\n';
    }
  }
  return out;
}

const char* const kPathCsvHeader =
    "schema_version,T,learner,env,round,mean_pi1,phase_boundary";

std::string pi1_path_csv(const std::vector<RunBlock>& blocks,
                         const std::vector<const AggregateStats*>& stats) {
  std::string out(kPathCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    std::vector<long> boundaries;
    if (b.horizon >= 1000) {
      const auto plan = phase_plan(b.horizon);
      boundaries = {plan.end1, plan.end2, plan.end3, plan.end4};
    }
    for (const auto& [round, mean_pi1] : stats[i]->mean_pi1_path) {
      bool is_boundary = false;
      for (long x : boundaries) is_boundary = is_boundary || (round == x || round == x + 1);
      out += std::to_string(kCsvSchemaVersion);
      out += ',';
      out += std::to_string(b.horizon);
      out += ',';
      out += b.learner;
      out += ',';
      out += b.env;
      out += ',';
      out += std::to_string(round);
      out += ',';
      out += format_double17(mean_pi1);
      out += ',';
      out += is_boundary ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

namespace {
ordered_json json_number(double x) {
  // JSON has no NaN/inf literals; emit null for them.
  if (std::isnan(x) || std::isinf(x)) return nullptr;
  return x;
}
}  // namespace

ordered_json summary_to_json(const ScalarSummary& s) {
  ordered_json j;
  j["mean"] = json_number(s.mean);
  j["stddev"] = json_number(s.stddev);
  j["stderr"] = json_number(s.stderr_);
  j["ci95_halfwidth"] = json_number(s.ci95_halfwidth);
  return j;
}

ordered_json stats_to_json(const AggregateStats& st) {
  ordered_json j;
  j["n_trials"] = st.n_trials;
  j["pseudo_regret"] = summary_to_json(st.pseudo_regret);
  j["second_moment_sum"] = summary_to_json(st.second_moment_sum);
  j["bias_sum"] = summary_to_json(st.bias_sum);
  j["ln_pi_final"] = summary_to_json(st.ln_pi_final);
  j["pi_final"] = summary_to_json(st.pi_final);
  j["pi_at_t1"] = summary_to_json(st.pi_at_t1);
  j["pi_at_t1_plus_1"] = summary_to_json(st.pi_at_t1_plus_1);
  j["pi_at_t1t2_plus_1"] = summary_to_json(st.pi_at_t1t2_plus_1);
  j["arm1_pulls_phase1"] = summary_to_json(st.arm1_pulls_phase1);
  j["freq_e1"] = st.freq_e1;
  j["freq_e2"] = st.freq_e2;
  j["freq_recovered"] = st.freq_recovered;
  ordered_json d;
  d["max_sum_drift"] = json_number(st.max_sum_drift);
  d["min_entry"] = json_number(st.min_entry);
  d["min_multiplier"] = json_number(st.min_multiplier);
  d["max_multiplier"] = json_number(st.max_multiplier);
  d["min_rel_loss1"] = json_number(st.min_rel_loss1);
  d["max_rel_loss1"] = json_number(st.max_rel_loss1);
  d["all_phase2_monotone"] = st.all_phase2_monotone;
  j["diagnostics"] = d;
  return j;
}

ordered_json claim_report_to_json(const ClaimReport& r) {
  ordered_json j;
  j["horizon"] = r.horizon;
  j["arms"] = r.arms;
  j["n_trials"] = r.n_trials;
  j["eta"] = r.eta;
  j["gamma"] = r.gamma;
  j["claim1"] = {{"stat", json_number(r.claim1_stat)},
                 {"stderr", json_number(r.claim1_se)},
                 {"paper_target", json_number(r.claim1_target_paper)}};
  j["claim2"] = {{"stat", json_number(r.claim2_stat)},
                 {"stderr", json_number(r.claim2_se)},
                 {"paper_threshold", json_number(r.claim2_threshold_paper)}};
  j["claim3"] = {{"stat", json_number(r.claim3_stat)},
                 {"stderr", json_number(r.claim3_se)},
                 {"paper_target", json_number(r.claim3_target_paper)}};
  j["events"] = {{"freq_e1", r.freq_e1},
                 {"freq_e2", r.freq_e2},
                 {"freq_recovered", r.freq_recovered},
                 {"paper_target", json_number(r.freq_target_paper)}};
  j["phase1_decay"] = {{"mean_pi1_at_t1", json_number(r.phase1_mean_pi1)},
                       {"stderr", json_number(r.phase1_se)},
                       {"paper_threshold", json_number(r.phase1_threshold_paper)}};
  j["derived"] = {{"eps1", json_number(r.derived.eps1)},
                  {"eps2", json_number(r.derived.eps2)},
                  {"M", json_number(r.derived.m_exponent)},
                  {"T_prime", json_number(r.derived.t_prime)},
                  {"T_prime_within_phase21", r.derived.t_prime_within_phase21}};
  j["note"] = r.note;
  return j;
}

}  // namespace sbx
