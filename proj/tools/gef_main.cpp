// SPDX-License-Identifier: Apache-2.0
//
// gefkit command-line harness: special-state catalog, measurements,
// seeded inequality-verification campaigns, convex-roof runs and the exact
// coefficient check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gefkit/bounds.hpp"
#include "gefkit/campaign.hpp"
#include "gefkit/catalog.hpp"
#include "gefkit/gef.hpp"
#include "gefkit/statefile.hpp"

namespace {

using namespace gefkit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInternal = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << text;
}

json breakdown_to_json(const GefBreakdown& b) {
  json terms = json::array();
  for (const GefTerm& t : b.terms) {
    json row;
    row["subsystem"] = t.subsystem.label();
    row["kind"] = t.kind == GefTermKind::entropy ? "entropy"
                  : t.kind == GefTermKind::eof   ? "eof"
                                                 : "sub_gef";
    row["weight"] = t.weight.str();
    row["value"] = t.value;
    row["estimate"] = t.is_estimate;
    terms.push_back(std::move(row));
  }
  return json{{"total", b.total},
              {"estimate", b.is_estimate()},
              {"definition", b.definition == GefDefinition::modified ? "modified" : "original"},
              {"terms", std::move(terms)}};
}

json diagnostics_to_json(const RoofDiagnostics& d) {
  json doc;
  auto put = [](json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  put(doc, "gamma2", d.gamma2);
  put(doc, "gamma3", d.gamma3);
  put(doc, "delta2", d.delta2);
  doc["pair_eof_sum"] = d.pair_eof_sum;
  doc["triple_gef_sum"] = d.triple_gef_sum;
  json per = json::array();
  for (const TripleGamma& tg : d.gamma2_per_triple) {
    json row;
    row["triple"] = tg.triple.label();
    put(row, "gamma2", tg.gamma2);
    row["pair_eof_sum"] = tg.pair_eof_sum;
    per.push_back(std::move(row));
  }
  doc["per_triple"] = std::move(per);
  return doc;
}

json roof_to_json(const RoofResult& r, bool include_members) {
  json doc;
  doc["value"] = r.value;
  doc["converged"] = r.converged;
  doc["restarts_used"] = r.restarts_used;
  doc["is_estimate"] = r.is_estimate;
  json members = json::array();
  for (std::size_t i = 0; i < r.decomposition.size(); ++i) {
    json m;
    m["probability"] = r.decomposition.probabilities[i];
    if (include_members) {
      json amps = json::array();
      for (const cplx& z : r.decomposition.members[i].amplitudes)
        amps.push_back(json::array({z.real(), z.imag()}));
      m["amplitudes"] = std::move(amps);
    }
    members.push_back(std::move(m));
  }
  doc["decomposition"] = std::move(members);
  return doc;
}

struct RoofFlags {
  std::size_t restarts = 8;
  std::size_t iters = 2000;
  std::size_t cardinality = 0;
  double tol = 1e-7;

  RoofConfig to_config(std::uint64_t seed) const {
    RoofConfig cfg;
    cfg.restarts = restarts;
    cfg.max_evals = iters;
    cfg.cardinality = cardinality;
    cfg.tol = tol;
    cfg.seed = seed;
    return cfg;
  }
};

void add_roof_flags(CLI::App* cmd, RoofFlags& flags) {
  cmd->add_option("--roof-restarts", flags.restarts, "roof optimizer restarts");
  cmd->add_option("--roof-iters", flags.iters, "objective evaluations per restart");
  cmd->add_option("--roof-card", flags.cardinality,
                  "decomposition cardinality (0 = rank + 2)");
  cmd->add_option("--roof-tol", flags.tol, "simplex convergence tolerance");
}

int cmd_catalog(const std::string& name, const CatalogParams& params, const std::string& out) {
  const AnyState state = catalog_state(name, params);
  write_output(out, state_to_json(state));
  return kExitOk;
}

int cmd_measure(const std::string& state_path, std::uint64_t seed, const RoofFlags& flags,
                const std::string& out) {
  const AnyState state = load_state_file(state_path);
  const RoofConfig roof = flags.to_config(seed);
  BoundsOptions opt;
  opt.roof = roof;

  json doc;
  const bool pure = std::holds_alternative<PureState>(state);
  doc["kind"] = pure ? "pure" : "mixed";

  const PartyDims dims =
      pure ? std::get<PureState>(state).dims : std::get<DensityMatrix>(state).dims;
  doc["dims"] = dims.dims();
  const std::size_t parties = dims.parties();

  StateEvaluator ev = pure ? StateEvaluator(std::get<PureState>(state), opt)
                           : StateEvaluator(std::get<DensityMatrix>(state), opt);
  doc["digest"] = ev.digest();

  json entropies;
  for (std::size_t size = 1; size < parties; ++size)
    for (const SubsetSelector& s : subsets_of_size(parties, size))
      entropies[s.label()] = ev.entropy(s);
  doc["entropies"] = std::move(entropies);

  if (parties >= 2) {
    json eofs;
    for (const SubsetSelector& s : subsets_of_size(parties, 2)) {
      const Estimate e = ev.pair_eof_of(s);
      eofs[s.label()] = json{{"value", e.value}, {"estimate", e.is_estimate}};
    }
    doc["pair_eof"] = std::move(eofs);
  }

  if (pure) {
    const PureState& psi = std::get<PureState>(state);
    if (parties == 3) {
      doc["gef_original"] = breakdown_to_json(gef_pure_tri(psi));
      doc["gef_modified"] = breakdown_to_json(gef_pure_tri_modified(psi));
      const Decomposition trivial{{1.0}, {psi}};
      doc["diagnostics"] = diagnostics_to_json(diagnostics(pure_to_density(psi), trivial, roof));
    } else if (parties == 4) {
      doc["gef_original"] = breakdown_to_json(gef_pure_four(psi, roof));
      const Decomposition trivial{{1.0}, {psi}};
      doc["diagnostics"] = diagnostics_to_json(diagnostics(pure_to_density(psi), trivial, roof));
    } else if (parties == 2) {
      const Estimate e = gef_bipartite(pure_to_density(psi), roof);
      doc["eof"] = json{{"value", e.value}, {"estimate", e.is_estimate}};
    }
  } else {
    const DensityMatrix& rho = std::get<DensityMatrix>(state);
    if (parties == 3 || parties == 4) {
      const RoofResult& r = ev.mixed_roof();
      doc["gef_roof"] = roof_to_json(r, false);
      doc["diagnostics"] = diagnostics_to_json(diagnostics(rho, r.decomposition, roof));
    } else if (parties == 2) {
      const Estimate e = gef_bipartite(rho, roof);
      doc["eof"] = json{{"value", e.value}, {"estimate", e.is_estimate}};
    }
  }

  write_output(out, doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const CampaignConfig& cfg, const std::string& out, const std::string& format) {
  const CampaignResult result = run_campaign(cfg);
  write_output(out, format == "json" ? campaign_to_json(result) : campaign_to_csv(result));
  std::cerr << "verify: holds=" << result.summary.holds
            << " violated=" << result.summary.violated
            << " inconclusive=" << result.summary.inconclusive
            << " skipped=" << result.summary.skipped << "\n";
  return result.summary.violated == 0 ? kExitOk : kExitViolated;
}

int cmd_roof(const std::string& state_path, std::uint64_t seed, const RoofFlags& flags,
             bool strict, const std::string& out) {
  const AnyState state = load_state_file(state_path);
  const RoofConfig roof = flags.to_config(seed);

  DensityMatrix rho = std::holds_alternative<DensityMatrix>(state)
                          ? std::get<DensityMatrix>(state)
                          : pure_to_density(std::get<PureState>(state));
  const std::size_t parties = rho.dims.parties();

  RoofResult result;
  if (parties == 2) {
    result = minimize_convex_roof(
        rho, [](const PureState& psi) { return eof_pure_bipartite(psi, SubsetSelector{0}); },
        roof);
  } else if (parties == 3) {
    result = gef_mixed_tri(rho, roof);
  } else if (parties == 4) {
    result = gef_mixed_four(rho, roof);
  } else {
    throw std::invalid_argument("roof: need a 2-, 3- or 4-party state");
  }

  json doc = roof_to_json(result, true);
  if (parties >= 3)
    doc["diagnostics"] = diagnostics_to_json(diagnostics(rho, result.decomposition, roof));
  write_output(out, doc.dump(2) + "\n");
  if (strict && !result.converged) return kExitViolated;
  return kExitOk;
}

int cmd_coeffs(const std::string& out) {
  const CoefficientReport report = derive_coefficients();
  std::ostringstream text;
  for (const CoefficientStep& step : report.steps) {
    text << step.name << ":";
    for (const auto& [key, value] : step.derived) text << ' ' << key << '=' << value.str();
    text << (step.matches ? "  PASS" : "  FAIL") << '\n';
  }
  text << (report.all_match ? "all coefficient steps PASS" : "coefficient mismatch") << '\n';
  write_output(out, text.str());
  return report.all_match ? kExitOk : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized entanglement of formation toolkit"};
  app.require_subcommand(1);

  // catalog
  auto* catalog = app.add_subcommand("catalog", "write a named special state");
  std::string catalog_name;
  CatalogParams params;
  std::string catalog_out;
  catalog->add_option("name", catalog_name, "state name")
      ->required()
      ->check(CLI::IsMember(catalog_names()));
  catalog->add_option("--n", params.n, "ghz party count (2..4)");
  catalog->add_option("--p", params.p, "werner mixing weight");
  catalog->add_option("--theta", params.theta, "spectator polar angle");
  catalog->add_option("--phi", params.phi, "spectator relative phase");
  catalog->add_option("--sign", params.sign, "Bell branch: +1 or -1");
  catalog->add_option("--dims", params.dims, "product-state dims")->delimiter(',');
  catalog->add_option("--out", catalog_out, "output path (default stdout)");

  // measure
  auto* measure = app.add_subcommand("measure", "entropies, EoFs and GEF of a state file");
  std::string measure_state, measure_out;
  std::uint64_t measure_seed = 0;
  RoofFlags measure_roof;
  measure->add_option("--state", measure_state, "state file")->required();
  measure->add_option("--seed", measure_seed, "seed for roof estimates (default 0)");
  add_roof_flags(measure, measure_roof);
  measure->add_option("--out", measure_out, "output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "seeded inequality verification campaign");
  CampaignConfig campaign;
  RoofFlags verify_roof;
  std::string verify_out, verify_format = "csv";
  verify->add_option("--seed", campaign.seed, "master seed")->required();
  verify->add_option("--trials", campaign.trials, "number of random states");
  verify->add_option("--dims", campaign.dims, "party dimensions, e.g. 2,2,2")->delimiter(',');
  verify->add_option("--rank", campaign.rank, "Ginibre rank (0 = Haar pure states)");
  std::size_t verify_rank_max = 0;
  verify->add_option("--rank-max", verify_rank_max, "cycle ranks rank..rank-max");
  verify->add_option("--tol", campaign.tol_exact, "tolerance for exact entries");
  verify->add_option("--est-tol", campaign.tol_estimate, "tolerance for estimated entries");
  verify->add_option("--ineq", campaign.inequalities, "inequality ids (default all)")
      ->delimiter(',');
  verify->add_option("--workers", campaign.workers, "worker threads");
  add_roof_flags(verify, verify_roof);
  verify->add_option("--out", verify_out, "report path (default stdout)");
  verify->add_option("--format", verify_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // roof
  auto* roofcmd = app.add_subcommand("roof", "convex-roof minimization for a state file");
  std::string roof_state, roof_out;
  std::uint64_t roof_seed = 0;
  bool roof_seed_set = false;
  RoofFlags roof_flags;
  bool strict = false;
  roofcmd->add_option("--state", roof_state, "state file")->required();
  roofcmd->add_option("--seed", roof_seed, "optimizer seed")
      ->required();
  add_roof_flags(roofcmd, roof_flags);
  roofcmd->add_flag("--strict", strict, "nonzero exit on non-convergence");
  roofcmd->add_option("--out", roof_out, "output path (default stdout)");
  (void)roof_seed_set;

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "exact bound-coefficient chain check");
  std::string coeffs_out;
  coeffs->add_option("--out", coeffs_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (catalog->parsed()) return cmd_catalog(catalog_name, params, catalog_out);
    if (measure->parsed()) return cmd_measure(measure_state, measure_seed, measure_roof, measure_out);
    if (verify->parsed()) {
      campaign.roof = verify_roof.to_config(0);  // per-trial seeds derive from the master seed
      if (verify_rank_max > 0) campaign.rank_max = verify_rank_max;
      return cmd_verify(campaign, verify_out, verify_format);
    }
    if (roofcmd->parsed()) return cmd_roof(roof_state, roof_seed, roof_flags, strict, roof_out);
    if (coeffs->parsed()) return cmd_coeffs(coeffs_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
