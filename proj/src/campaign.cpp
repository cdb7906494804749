// SPDX-License-Identifier: Apache-2.0

#include "gefkit/campaign.hpp"

#include <atomic>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gefkit {

namespace {

constexpr std::uint64_t kTrialStateTag = 0x545249414C;  // trial state streams
constexpr std::uint64_t kTrialRoofTag = 0x524F4F46;     // trial roof seeds

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate_config(const CampaignConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("campaign: trials must be >= 1");
  if (cfg.dims.empty()) throw std::invalid_argument("campaign: dims must be nonempty");
  const PartyDims dims(cfg.dims);
  if (cfg.rank > dims.total()) throw std::invalid_argument("campaign: rank exceeds dimension");
  if (cfg.rank_max && (*cfg.rank_max < cfg.rank || *cfg.rank_max > dims.total()))
    throw std::invalid_argument("campaign: rank-max out of range");
  if (cfg.rank_max && cfg.rank == 0)
    throw std::invalid_argument("campaign: rank-max needs a nonzero rank");
  if (cfg.workers < 1) throw std::invalid_argument("campaign: workers must be >= 1");
  for (const std::string& id : cfg.inequalities)
    if (find_inequality(id) == nullptr)
      throw std::invalid_argument("campaign: unknown inequality id: " + id);
}

}  // namespace

AnyState campaign_state(const CampaignConfig& cfg, std::size_t trial) {
  const PartyDims dims(cfg.dims);
  RandomSource rng =
      RandomSource(RandomSource::derive(cfg.seed, kTrialStateTag)).split(trial);
  if (cfg.rank == 0) return random_haar_pure(dims, rng);
  std::size_t rank = cfg.rank;
  if (cfg.rank_max && *cfg.rank_max > cfg.rank)
    rank = cfg.rank + trial % (*cfg.rank_max - cfg.rank + 1);
  return random_density(dims, rank, rng);
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  CampaignResult result;
  result.config = cfg;
  result.per_trial.resize(cfg.trials);

  const auto run_one = [&](std::size_t trial) {
    const AnyState state = campaign_state(cfg, trial);
    BoundsOptions opt;
    opt.tol_exact = cfg.tol_exact;
    opt.tol_estimate = cfg.tol_estimate;
    opt.roof = cfg.roof;
    opt.roof.seed = RandomSource::derive(cfg.seed, kTrialRoofTag + trial);
    if (std::holds_alternative<PureState>(state))
      result.per_trial[trial] =
          run_registry(std::get<PureState>(state), opt, cfg.inequalities);
    else
      result.per_trial[trial] =
          run_registry(std::get<DensityMatrix>(state), opt, cfg.inequalities);
  };

  const std::size_t workers = std::min(cfg.workers, cfg.trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) run_one(t);
  } else {
    // Work stealing over a shared counter; every slot is written exactly
    // once, so the result is identical for any worker count.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= cfg.trials) break;
            run_one(t);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const auto& records : result.per_trial)
    for (const InequalityRecord& rec : records) {
      switch (rec.verdict) {
        case Verdict::holds: ++result.summary.holds; break;
        case Verdict::violated: ++result.summary.violated; break;
        case Verdict::inconclusive: ++result.summary.inconclusive; break;
        case Verdict::skipped: ++result.summary.skipped; break;
      }
    }
  return result;
}

std::string campaign_to_csv(const CampaignResult& result) {
  std::ostringstream out;
  out << "id,lhs,rhs,slack,verdict,seed,trial\n";
  for (std::size_t t = 0; t < result.per_trial.size(); ++t)
    for (const InequalityRecord& rec : result.per_trial[t]) {
      out << rec.id << ',' << format_double(rec.lhs) << ',' << format_double(rec.rhs) << ','
          << format_double(rec.slack) << ',' << verdict_name(rec.verdict) << ','
          << result.config.seed << ',' << t << '\n';
    }
  const CampaignSummary& s = result.summary;
  out << "# holds=" << s.holds << " violated=" << s.violated
      << " inconclusive=" << s.inconclusive << " skipped=" << s.skipped << '\n';
  return out.str();
}

std::string campaign_to_json(const CampaignResult& result) {
  nlohmann::json doc;
  doc["seed"] = result.config.seed;
  doc["trials"] = result.config.trials;
  doc["dims"] = result.config.dims;
  doc["rank"] = result.config.rank;
  if (result.config.rank_max) doc["rank_max"] = *result.config.rank_max;
  doc["summary"] = {{"holds", result.summary.holds},
                    {"violated", result.summary.violated},
                    {"inconclusive", result.summary.inconclusive},
                    {"skipped", result.summary.skipped}};
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t t = 0; t < result.per_trial.size(); ++t)
    for (const InequalityRecord& rec : result.per_trial[t]) {
      nlohmann::json row;
      row["trial"] = t;
      row["id"] = rec.id;
      row["verdict"] = verdict_name(rec.verdict);
      if (rec.verdict != Verdict::skipped) {
        row["lhs"] = rec.lhs;
        row["rhs"] = rec.rhs;
        row["slack"] = rec.slack;
        row["lhs_estimate"] = rec.lhs_estimate;
        row["rhs_estimate"] = rec.rhs_estimate;
        row["tolerance"] = rec.tolerance;
      }
      row["digest"] = rec.input_digest;
      if (!rec.note.empty()) row["note"] = rec.note;
      records.push_back(std::move(row));
    }
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

}  // namespace gefkit
