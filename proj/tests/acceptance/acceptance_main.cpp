// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; invoke with
// c1..c8 to run a single criterion or "all" (default) for the full gate.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gefkit/bounds.hpp"
#include "gefkit/campaign.hpp"
#include "gefkit/catalog.hpp"
#include "gefkit/gef.hpp"
#include "gefkit/statefile.hpp"

using namespace gefkit;

namespace {

std::size_t workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// --- C1: exact coefficient chain -------------------------------------------

Outcome criterion1() {
  Outcome out;
  const CoefficientReport report = derive_coefficients();
  out.require(report.all_match, "coefficient chain mismatch");
  auto coeff = [&](const std::string& step, const std::string& key) -> GammaAffine {
    for (const CoefficientStep& s : report.steps)
      if (s.name == step && s.derived.count(key)) return s.derived.at(key);
    out.require(false, "missing step " + step + " key " + key);
    return {};
  };
  out.require(coeff("TRI-U", "S2") == GammaAffine{Rational{1, 6}}, "tri S2 != 1/6");
  out.require(coeff("TRI-U", "S1") == GammaAffine{Rational{1, 3}}, "tri S1 != 1/3");
  out.require(coeff("P4U1", "S3") == GammaAffine{Rational{1, 14}}, "P4U1 S3 != 1/14");
  out.require(coeff("P4U1", "S2") == GammaAffine{Rational{2, 21}}, "P4U1 S2 != 2/21");
  out.require(coeff("P4U1", "S1") == GammaAffine{Rational{1, 4}}, "P4U1 S1 != 1/4");
  out.require(coeff("P4U2", "S2") == GammaAffine{Rational{4, 21}}, "P4U2 S2 != 4/21");
  out.require(coeff("P4U2", "S1") == GammaAffine{Rational{5, 28}}, "P4U2 S1 != 5/28");
  out.require(coeff("P4U3", "S2") == GammaAffine{Rational{13, 42}}, "P4U3 S2 != 13/42");
  out.require(coeff("P4LM", "Ef2") == GammaAffine{Rational{5, 42}, Rational{1, 21}},
              "P4LM Ef2 != (5+2g2)/42");
  out.require(coeff("P4LF", "Ef2") == GammaAffine{Rational{2, 7}, Rational{1, 21}},
              "P4LF Ef2 != 2/7 + g2/21");
  return out;
}

// --- C2: exact-inequality fuzz ---------------------------------------------

Outcome criterion2() {
  Outcome out;
  auto fuzz = [&](std::size_t trials, std::vector<std::size_t> dims, std::size_t rank,
                  std::size_t rank_max, std::vector<std::string> ids, const char* label) {
    CampaignConfig cfg;
    cfg.trials = trials;
    cfg.dims = std::move(dims);
    cfg.rank = rank;
    if (rank_max > rank) cfg.rank_max = rank_max;
    cfg.seed = 20260810;
    cfg.tol_exact = 1e-8;
    cfg.inequalities = std::move(ids);
    cfg.workers = workers();
    const CampaignResult res = run_campaign(cfg);
    out.require(res.summary.violated == 0,
                std::string(label) + ": " + std::to_string(res.summary.violated) + " violated");
    out.require(res.summary.inconclusive == 0,
                std::string(label) + ": unexpected inconclusive records");
  };
  fuzz(10000, {2, 2, 2}, 0, 0,
       {"T1", "T2", "T3", "T4", "E1", "P3U", "P3L", "P3U2", "P3L2", "B3U", "B3L"},
       "3-qubit pure");
  fuzz(1000, {2, 2, 2, 2}, 0, 0, {"T1", "T2", "T3", "T4", "F1", "F2", "F3", "E1"},
       "4-qubit pure");
  fuzz(1000, {2, 2, 2}, 2, 8, {"T1", "T2", "T3", "T4", "E1"}, "3-qubit Ginibre ranks 2-8");
  return out;
}

// --- C3: catalog fixed points -----------------------------------------------

Outcome criterion3() {
  Outcome out;
  const double ghz3 = gef_pure_tri(make_ghz(3)).total;
  const double ghz3m = gef_pure_tri_modified(make_ghz(3)).total;
  out.require(std::abs(ghz3 - 1.0) <= 1e-9, "GEF(GHZ3) original != 1");
  out.require(std::abs(ghz3m - 1.0) <= 1e-9, "GEF(GHZ3) modified != 1");

  const std::vector<EbVariant> variants{EbVariant::ab, EbVariant::ac1, EbVariant::ac2,
                                        EbVariant::bc};
  for (std::size_t v = 0; v < variants.size(); ++v) {
    const PureState s = make_extended_bell(variants[v], 0.0, 0.0, +1);
    out.require(std::abs(gef_pure_tri(s).total - 5.0 / 6.0) <= 1e-9,
                "EB variant " + std::to_string(v) + " original != 5/6");
    out.require(std::abs(gef_pure_tri_modified(s).total - 1.0) <= 1e-9,
                "EB variant " + std::to_string(v) + " modified != 1");
  }
  // Spectator independence over 16 seeded angle draws.
  RandomSource rng(303);
  for (int t = 0; t < 16; ++t) {
    const double theta = rng.uniform(0.0, 3.141592653589793);
    const double phi = rng.uniform(0.0, 2.0 * 3.141592653589793);
    const int sign = t % 2 == 0 ? +1 : -1;
    for (const EbVariant v : variants) {
      const PureState s = make_extended_bell(v, theta, phi, sign);
      out.require(std::abs(gef_pure_tri(s).total - 5.0 / 6.0) <= 1e-8,
                  "EB spectator dependence in the original definition");
      out.require(std::abs(gef_pure_tri_modified(s).total - 1.0) <= 1e-8,
                  "EB spectator dependence in the modified definition");
    }
  }

  out.require(std::abs(gef_pure_tri(make_w3()).total - 1.193324) <= 1e-5, "GEF(W3) off");

  RoofConfig cfg;
  cfg.seed = 304;
  const double ghz4 = gef_pure_four(make_ghz(4), cfg).total;
  out.require(std::abs(ghz4 - 1.0) <= 1e-3, "GEF(GHZ4) != 1 within 1e-3");

  std::vector<cplx> amps(16);
  const PureState bell = make_bell();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      amps[i * 4 + j] = bell.amplitudes[i] * bell.amplitudes[j];
  const double bb = gef_pure_four(PureState(std::move(amps), PartyDims{2, 2, 2, 2}), cfg).total;
  out.require(std::abs(bb - 32.0 / 21.0) <= 5e-3, "GEF(Bell x Bell) != 32/21 within 5e-3");
  return out;
}

// --- C4: roof vs Wootters oracle --------------------------------------------

Outcome criterion4() {
  Outcome out;
  const std::size_t trials = 200;
  std::vector<double> diffs(trials, 0.0);
  std::vector<int> sound(trials, 1);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials) break;
      RandomSource rng = RandomSource(404).split(t);
      const std::size_t rank = 2 + t % 3;
      const DensityMatrix rho = random_density(PartyDims{2, 2}, rank, rng);
      const double exact = eof_two_qubit_mixed(rho);
      RoofConfig cfg;
      cfg.seed = RandomSource::derive(404, t);
      const RoofResult res = minimize_convex_roof(
          rho,
          [](const PureState& psi) { return eof_pure_bipartite(psi, SubsetSelector{0}); },
          cfg);
      diffs[t] = std::abs(res.value - exact);
      sound[t] = res.value >= exact - 1e-9 ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers(); ++w) pool.emplace_back(work);
  for (std::thread& th : pool) th.join();

  double worst = 0.0;
  std::size_t bad = 0, unsound = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    worst = std::max(worst, diffs[t]);
    if (diffs[t] > 5e-3) ++bad;
    if (!sound[t]) ++unsound;
  }
  std::ostringstream msg;
  msg << "worst |roof - Wootters| = " << worst;
  out.require(bad == 0, std::to_string(bad) + " of 200 beyond 5e-3 (" + msg.str() + ")");
  out.require(unsound == 0, std::to_string(unsound) + " roofs below the closed form - 1e-9");
  if (out.pass) out.detail = msg.str();
  return out;
}

// --- C5: equality witnesses ---------------------------------------------------

Outcome criterion5() {
  Outcome out;
  BoundsOptions opt;
  opt.roof.seed = 505;
  {
    StateEvaluator ev(make_ghz(3), opt);
    const InequalityRecord rec = evaluate_inequality("P3L", ev);
    out.require(std::abs(rec.slack) <= 1e-9, "P3L slack on GHZ3 not 0");
  }
  {
    StateEvaluator ev(make_extended_bell(EbVariant::ab, 0.0, 0.0, +1), opt);
    const InequalityRecord rec = evaluate_inequality("P3L", ev);
    out.require(std::abs(rec.slack) <= 1e-9, "P3L slack on extended Bell not 0");
  }
  {
    StateEvaluator ev(make_ghz(4), opt);
    const InequalityRecord rec = evaluate_inequality("P4L0", ev);
    out.require(rec.verdict != Verdict::skipped, "P4L0 skipped on GHZ4");
    out.require(std::abs(rec.slack) <= 1e-3, "P4L0 (gamma-free) slack on GHZ4 not 0");
  }
  return out;
}

// --- C6: mixed tri-party bounds ----------------------------------------------

Outcome criterion6() {
  Outcome out;
  CampaignConfig cfg;
  cfg.trials = 100;
  cfg.dims = {2, 2, 2};
  cfg.rank = 2;
  cfg.seed = 606;
  cfg.inequalities = {"M3U", "M3L", "M3L0"};
  cfg.workers = workers();
  const CampaignResult res = run_campaign(cfg);

  std::size_t m3u_holds = 0, m3u_other = 0, m3u_violated = 0, low_violated = 0;
  for (const auto& records : res.per_trial)
    for (const InequalityRecord& rec : records) {
      if (rec.id == "M3U") {
        if (rec.verdict == Verdict::holds) ++m3u_holds;
        else if (rec.verdict == Verdict::violated) ++m3u_violated;
        else ++m3u_other;
      } else if (rec.verdict == Verdict::violated) {
        ++low_violated;
      }
    }
  out.require(m3u_violated == 0, "M3U violated records");
  out.require(m3u_holds >= 95, "M3U holds only " + std::to_string(m3u_holds) + "/100");
  out.require(low_violated == 0, "M3L/M3L0 violated records");
  out.detail = "M3U holds " + std::to_string(m3u_holds) + "/100, inconclusive " +
               std::to_string(m3u_other);
  return out;
}

// --- C7: four-party mixed sanity ----------------------------------------------

Outcome criterion7() {
  Outcome out;
  CampaignConfig cfg;
  cfg.trials = 20;
  cfg.dims = {2, 2, 2, 2};
  cfg.rank = 2;
  cfg.seed = 707;
  cfg.inequalities = {"M4U", "M4L0"};
  cfg.roof.restarts = 2;
  cfg.roof.max_evals = 240;
  cfg.workers = workers();
  const CampaignResult res = run_campaign(cfg);
  std::size_t violated = 0, holds = 0, inconclusive = 0;
  for (const auto& records : res.per_trial)
    for (const InequalityRecord& rec : records) {
      if (rec.verdict == Verdict::violated) ++violated;
      if (rec.verdict == Verdict::holds) ++holds;
      if (rec.verdict == Verdict::inconclusive) ++inconclusive;
    }
  out.require(violated == 0, std::to_string(violated) + " violated records");
  out.detail = "holds " + std::to_string(holds) + ", inconclusive " +
               std::to_string(inconclusive) + " of 40 records";
  return out;
}

// --- C8: CLI determinism across worker counts ----------------------------------

Outcome criterion8(const std::string& cli_path) {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gefkit_acceptance";
  fs::create_directories(dir);
  const fs::path out1 = dir / "verify_w1.csv";
  const fs::path out8 = dir / "verify_w8.csv";

  const std::string base = "\"" + cli_path +
                           "\" verify --seed 42 --trials 200 --dims 2,2,2 "
                           "--ineq T1,T2,T3,T4,E1,P3U,P3L,P3U2,P3L2,B3U,B3L --format csv";
  const std::string cmd1 = base + " --workers 1 --out " + out1.string();
  const std::string cmd8 = base + " --workers 8 --out " + out8.string();
  out.require(std::system(cmd1.c_str()) == 0, "verify --workers 1 failed");
  out.require(std::system(cmd8.c_str()) == 0, "verify --workers 8 failed");
  if (!out.pass) return out;

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string a = slurp(out1), b = slurp(out8);
  out.require(!a.empty(), "empty report");
  out.require(a == b, "reports differ between worker counts");

  // Same code path in-process, exercising the campaign engine directly.
  CampaignConfig cfg;
  cfg.trials = 60;
  cfg.dims = {2, 2, 2};
  cfg.seed = 42;
  cfg.workers = 1;
  const std::string c1 = campaign_to_csv(run_campaign(cfg));
  cfg.workers = 8;
  const std::string c8 = campaign_to_csv(run_campaign(cfg));
  out.require(c1 == c8, "in-process reports differ between worker counts");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  const std::string cli = argc > 2 ? argv[2] : "";

  struct Criterion {
    std::string key;
    std::string title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"c1", "coefficient chain reproduces the printed rationals exactly", criterion1},
      {"c2", "exact-inequality fuzz: zero violated over seeded ensembles", criterion2},
      {"c3", "catalog fixed points (GHZ3, extended Bell, W3, GHZ4, Bell x Bell)", criterion3},
      {"c4", "roof matches the Wootters closed form on 200 seeded states", criterion4},
      {"c5", "equality witnesses (P3L on GHZ3 and extended Bell, P4L0 on GHZ4)", criterion5},
      {"c6", "mixed tri-party bounds on 100 seeded rank-2 states", criterion6},
      {"c7", "four-party mixed sanity on 20 seeded rank-2 states", criterion7},
      {"c8", "verify --seed 42 is byte-identical across worker counts",
       [&] { return criterion8(cli.empty() ? "./gefkit" : cli); }},
  };

  bool all_pass = true;
  bool ran_any = false;
  for (const Criterion& c : criteria) {
    if (which != "all" && which != c.key) continue;
    ran_any = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.1fs)%s%s\n", out.pass ? "PASS" : "FAIL",
                c.key.c_str(), c.title.c_str(), secs, out.detail.empty() ? "" : " — ",
                out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  if (!ran_any) {
    std::fprintf(stderr, "unknown criterion '%s' (use c1..c8 or all)\n", which.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
