#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sbx/simlab.hpp"

namespace sbx {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kCsvSchemaVersion = 1;

// %.17g: enough digits for an exact double round-trip.
std::string format_double17(double x);

// Header of the per-trial CSV; the schema-version column comes first.
extern const char* const kRunCsvHeader;

struct RunBlock {
  std::string learner;
  std::string env;
  long horizon = 0;
  double eta = 0.0;
  double gamma = 0.0;
  const std::vector<Trajectory>* trials = nullptr;
};

// One row per trial, blocks concatenated in order.
std::string run_csv(const std::vector<RunBlock>& blocks);

// Mean pi1 checkpoint path, one row per checkpoint:
// schema_version,T,learner,env,round,mean_pi1,phase_boundary
extern const char* const kPathCsvHeader;
std::string pi1_path_csv(const std::vector<RunBlock>& blocks,
                         const std::vector<const AggregateStats*>& stats);

ordered_json summary_to_json(const ScalarSummary& s);
ordered_json stats_to_json(const AggregateStats& st);
ordered_json claim_report_to_json(const ClaimReport& r);

}  // namespace sbx
