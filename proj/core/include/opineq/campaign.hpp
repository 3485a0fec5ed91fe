#pragma once

// Seeded property campaigns. Trial i draws everything from
// derive_seed(seed, stream(check_id), i), so results do not depend on the
// number of worker threads.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opineq/instances.hpp"

namespace opineq {

struct CampaignSpec {
  std::string check_id;
  std::vector<std::size_t> n = {2, 3, 4, 5, 6};
  std::vector<std::size_t> m = {2, 3, 4, 5, 6};
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Empty: every family the check accepts.
  std::vector<std::string> map_families;
  /// Empty: all three kinds.
  std::vector<FunPairKind> funpair_kinds;
  /// Two-positive split exponents; empty: {-1, -0.5, 0, 0.5, 1}.
  std::vector<double> p_values;
  Tolerance tolerances;
  std::string output_path;
  std::size_t threads = 1;
  /// Also evaluate geometric checks with a Haar-random V (informational).
  bool probe_random_v = true;
};

json campaign_spec_to_json(const CampaignSpec& s);
/// InvalidSpec on unknown ids, zero trials, empty or zero dimensions.
CampaignSpec campaign_spec_from_json(const json& j);
void validate(const CampaignSpec& s);

struct CampaignSummary {
  std::size_t trials = 0;
  std::size_t completed = 0;
  std::size_t failures = 0;
  std::size_t aux_failures = 0;
  std::size_t near_misses = 0;
  std::size_t resamples = 0;
  std::size_t singular_mean = 0;
  std::size_t random_v_trials = 0;
  std::size_t random_v_failures = 0;
  double min_slack = 0.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> first_failure;
  std::string first_failure_reason;
};

struct CampaignResult {
  CampaignSummary summary;
  json report;
  double seconds = 0.0;
  bool ok() const { return summary.failures == 0; }
};

/// Runs the campaign and writes the report to spec.output_path when set.
/// Stops at the first failing trial; the report then carries that instance.
CampaignResult run_campaign(const CampaignSpec& spec);

/// Families used when the spec lists none.
std::vector<std::string> default_families(const std::string& check_id);

}  // namespace opineq
