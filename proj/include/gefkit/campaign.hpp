// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gefkit/bounds.hpp"
#include "gefkit/catalog.hpp"

namespace gefkit {

/// A seeded verification campaign: N random states (Haar pure, or Ginibre at
/// fixed rank when rank > 0), each run through the selected registry subset.
struct CampaignConfig {
  std::size_t trials = 1;
  std::vector<std::size_t> dims{2, 2, 2};
  std::size_t rank = 0;  // 0: pure states; otherwise Ginibre at this rank
  std::optional<std::size_t> rank_max;  // when set, ranks cycle rank..rank_max
  std::uint64_t seed = 0;  // mandatory at the CLI; no wall-clock default
  double tol_exact = 1e-8;
  double tol_estimate = 1e-3;
  RoofConfig roof;
  std::vector<std::string> inequalities;  // empty: all applicable
  std::size_t workers = 1;
};

struct CampaignSummary {
  std::size_t holds = 0;
  std::size_t violated = 0;
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;
};

struct CampaignResult {
  CampaignConfig config;
  std::vector<std::vector<InequalityRecord>> per_trial;  // indexed by trial
  CampaignSummary summary;
};

/// Runs the campaign. Trials are independent work items; each trial's RNG and
/// roof seeds derive from (seed, trial index), so the result is a pure
/// function of the config no matter how many workers execute it.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// One row per (trial, inequality):
/// id,lhs,rhs,slack,verdict,seed,trial and a trailing summary comment.
/// Floats print with up to 17 significant digits so reports are byte-stable.
std::string campaign_to_csv(const CampaignResult& result);

std::string campaign_to_json(const CampaignResult& result);

/// The trial state for a campaign config (exposed for the CLI and tests).
AnyState campaign_state(const CampaignConfig& cfg, std::size_t trial);

}  // namespace gefkit
