// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "gefkit/bounds.hpp"
#include "gefkit/catalog.hpp"

using namespace gefkit;

namespace {

BoundsOptions quick_opt(std::uint64_t seed, std::size_t restarts = 4, std::size_t evals = 800) {
  BoundsOptions opt;
  opt.roof.restarts = restarts;
  opt.roof.max_evals = evals;
  opt.roof.seed = seed;
  return opt;
}

const std::vector<std::string> kExactPure3{"T1", "T2", "T3", "T4", "E1", "P3U",
                                           "P3L", "P3U2", "P3L2", "B3U", "B3L"};

InequalityRecord find_record(const std::vector<InequalityRecord>& records,
                             const std::string& id) {
  for (const InequalityRecord& r : records)
    if (r.id == id) return r;
  FAIL("record not found: ", id);
  return {};
}

}  // namespace

TEST_CASE("registry ids are unique and resolvable") {
  std::set<std::string> seen;
  for (const InequalityInfo& info : inequality_registry()) {
    CHECK(seen.insert(info.id).second);
    CHECK(find_inequality(info.id) == &info);
  }
  CHECK(find_inequality("nope") == nullptr);
}

TEST_CASE("verdict soundness rules") {
  CHECK(verdict_of(0.0, false, false, 1e-8) == Verdict::holds);
  CHECK(verdict_of(-0.5, false, false, 1e-8) == Verdict::violated);
  CHECK(verdict_of(-0.5, true, false, 1e-8) == Verdict::inconclusive);
  CHECK(verdict_of(-0.5, false, true, 1e-8) == Verdict::violated);
  CHECK(verdict_of(1e-9, true, false, 1e-8) == Verdict::holds);
}

TEST_CASE("T1 on GHZ3 is tight") {
  StateEvaluator ev(make_ghz(3), quick_opt(81));
  const InequalityRecord rec = evaluate_inequality("T1", ev);
  CHECK(rec.lhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(rec.rhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(rec.slack) < 1e-9);
  CHECK(rec.verdict == Verdict::holds);
}

TEST_CASE("P3U and P3L on GHZ3") {
  StateEvaluator ev(make_ghz(3), quick_opt(82));
  const InequalityRecord up = evaluate_inequality("P3U", ev);
  CHECK(up.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(up.rhs == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(up.verdict == Verdict::holds);

  // GHZ3 achieves equality in the lower bound.
  const InequalityRecord low = evaluate_inequality("P3L", ev);
  CHECK(std::abs(low.slack) < 1e-9);
  CHECK(low.verdict == Verdict::holds);
}

TEST_CASE("P3L equality on extended Bell states") {
  StateEvaluator ev(make_extended_bell(EbVariant::ab, 0.0, 0.0, +1), quick_opt(83));
  const InequalityRecord rec = evaluate_inequality("P3L", ev);
  CHECK(rec.lhs == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
  CHECK(rec.rhs == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
  CHECK(std::abs(rec.slack) < 1e-9);
}

TEST_CASE("every inequality holds with both sides zero on a product state") {
  StateEvaluator ev3(make_product(PartyDims{2, 2, 2}), quick_opt(84));
  for (const std::string& id : kExactPure3) {
    const InequalityRecord rec = evaluate_inequality(id, ev3);
    CHECK(std::abs(rec.lhs) < 1e-9);
    CHECK(std::abs(rec.rhs) < 1e-9);
    CHECK(rec.verdict == Verdict::holds);
  }
}

TEST_CASE("arity filtering") {
  StateEvaluator pair_ev(make_bell(), quick_opt(85));
  const auto records = run_registry(pair_ev);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "E1");

  StateEvaluator tri_ev(make_ghz(3), quick_opt(85));
  CHECK_THROWS_AS(evaluate_inequality("F1", tri_ev), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_inequality("M3L", tri_ev), std::invalid_argument);  // pure input
  CHECK_THROWS_AS(run_registry(tri_ev, {"bogus"}), std::invalid_argument);
}

TEST_CASE("registry on GHZ3 yields the twelve applicable records, all holding") {
  StateEvaluator ev(make_ghz(3), quick_opt(86));
  const auto records = run_registry(ev);
  // T1..T4, E1, P3U/P3L/P3U2/P3L2, B3U/B3L and M3U (same form for pure).
  CHECK(records.size() == 12);
  for (const InequalityRecord& rec : records) {
    CHECK(rec.verdict == Verdict::holds);
    CHECK(rec.input_digest == ev.digest());
  }
}

TEST_CASE("exact inequalities hold over seeded Haar ensembles") {
  RandomSource rng(87);
  BoundsOptions opt = quick_opt(87);
  for (int t = 0; t < 200; ++t) {
    StateEvaluator ev(random_haar_pure(PartyDims{2, 2, 2}, rng), opt);
    for (const std::string& id : kExactPure3) {
      const InequalityRecord rec = evaluate_inequality(id, ev);
      CHECK(rec.verdict == Verdict::holds);
      CHECK(rec.slack >= -1e-8);
      CHECK_FALSE(rec.lhs_estimate);
      CHECK_FALSE(rec.rhs_estimate);
    }
  }
}

TEST_CASE("four-party entropy inequalities hold over seeded ensembles") {
  RandomSource rng(88);
  BoundsOptions opt = quick_opt(88);
  const std::vector<std::string> entries{"T1", "T2", "T3", "T4", "F1", "F2", "F3", "E1"};
  for (int t = 0; t < 60; ++t) {
    StateEvaluator ev(random_haar_pure(PartyDims{2, 2, 2, 2}, rng), opt);
    for (const std::string& id : entries)
      CHECK(evaluate_inequality(id, ev).verdict == Verdict::holds);
  }
  for (int t = 0; t < 40; ++t) {
    StateEvaluator ev(random_density(PartyDims{2, 2, 2}, 2 + t % 7, rng), opt);
    for (const std::string& id : {"T1", "T2", "T3", "T4", "E1"})
      CHECK(evaluate_inequality(id, ev).verdict == Verdict::holds);
  }
}

TEST_CASE("P3U rhs equals P3U2 rhs on pure tri-party states") {
  RandomSource rng(89);
  BoundsOptions opt = quick_opt(89);
  for (int t = 0; t < 50; ++t) {
    StateEvaluator ev(random_haar_pure(PartyDims{2, 2, 2}, rng), opt);
    const InequalityRecord a = evaluate_inequality("P3U", ev);
    const InequalityRecord b = evaluate_inequality("P3U2", ev);
    CHECK(std::abs(a.rhs - b.rhs) < 1e-9);  // S(pair) = S(single) on pure states
  }
}

TEST_CASE("mixed tri-party entries: M3U, M3L and the gamma-free variant") {
  RandomSource rng(90);
  BoundsOptions opt = quick_opt(90, 6, 1500);
  int holds = 0;
  for (int t = 0; t < 12; ++t) {
    StateEvaluator ev(random_density(PartyDims{2, 2, 2}, 2, rng), opt);
    const InequalityRecord up = evaluate_inequality("M3U", ev);
    CHECK(up.lhs_estimate);
    CHECK(up.verdict != Verdict::violated);
    if (up.verdict == Verdict::holds) ++holds;

    const InequalityRecord low = evaluate_inequality("M3L", ev);
    if (low.verdict != Verdict::skipped) CHECK(low.verdict != Verdict::violated);
    const InequalityRecord low0 = evaluate_inequality("M3L0", ev);
    CHECK(low0.verdict != Verdict::violated);
  }
  CHECK(holds >= 10);
}

TEST_CASE("M3L is skipped when gamma2 is undefined") {
  ComplexMatrix m(8, 8);
  m(0, 0) = 0.5;
  m(7, 7) = 0.5;
  StateEvaluator ev(DensityMatrix(m, PartyDims{2, 2, 2}), quick_opt(91));
  const InequalityRecord rec = evaluate_inequality("M3L", ev);
  CHECK(rec.verdict == Verdict::skipped);
  CHECK(rec.note.find("gamma2") != std::string::npos);
  // The gamma-free variant still evaluates: 0 >= 0 style.
  const InequalityRecord rec0 = evaluate_inequality("M3L0", ev);
  CHECK(rec0.verdict == Verdict::holds);
}

TEST_CASE("four-party pure GEF entries on GHZ4") {
  BoundsOptions opt = quick_opt(92, 2, 300);
  StateEvaluator ev(make_ghz(4), opt);
  const InequalityRecord u1 = evaluate_inequality("P4U1", ev);
  CHECK(u1.verdict == Verdict::holds);
  CHECK(u1.lhs == doctest::Approx(1.0).epsilon(2e-3));
  // rhs = (1/14)*4 + (2/21)*6 + (1/4)*4 = 4/14 + 12/21 + 1 = 13/7.
  CHECK(u1.rhs == doctest::Approx(13.0 / 7.0).epsilon(1e-9));
  CHECK(evaluate_inequality("P4U2", ev).verdict == Verdict::holds);
  const InequalityRecord u3 = evaluate_inequality("P4U3", ev);
  CHECK(u3.rhs == doctest::Approx(13.0 / 42.0 * 6.0).epsilon(1e-9));

  // GHZ4 has no pair entanglement: gamma entries skip, the gamma-free
  // lower bound is tight.
  CHECK(evaluate_inequality("P4L", ev).verdict == Verdict::skipped);
  const InequalityRecord l0 = evaluate_inequality("P4L0", ev);
  CHECK(std::abs(l0.slack) < 1e-3);
  CHECK(l0.verdict == Verdict::holds);

  const InequalityRecord fsu = evaluate_inequality("FS-U", ev);
  CHECK(fsu.verdict == Verdict::holds);
  // rhs = (1/3) * 6 + 4 = 6 on GHZ4.
  CHECK(fsu.rhs == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("mixed four-party entries on a rank-2 state") {
  RandomSource rng(93);
  BoundsOptions opt = quick_opt(93, 1, 80);
  opt.roof.cardinality = 0;
  StateEvaluator ev(random_density(PartyDims{2, 2, 2, 2}, 2, rng), opt);
  const InequalityRecord up = evaluate_inequality("M4U", ev);
  CHECK(up.verdict != Verdict::violated);
  const InequalityRecord low0 = evaluate_inequality("M4L0", ev);
  CHECK(low0.verdict != Verdict::violated);
}

TEST_CASE("coefficient chain reproduces the printed rationals exactly") {
  const CoefficientReport report = derive_coefficients();
  CHECK(report.all_match);
  REQUIRE(report.steps.size() == 6);

  const CoefficientStep& tri = report.steps[0];
  CHECK(tri.name == "TRI-U");
  CHECK(tri.derived.at("S2") == GammaAffine{Rational{1, 6}});
  CHECK(tri.derived.at("S1") == GammaAffine{Rational{1, 3}});

  const CoefficientStep& p4u1 = report.steps[1];
  CHECK(p4u1.derived.at("S3") == GammaAffine{Rational{1, 14}});
  CHECK(p4u1.derived.at("S2") == GammaAffine{Rational{2, 21}});
  CHECK(p4u1.derived.at("S1") == GammaAffine{Rational{1, 4}});

  CHECK(report.steps[2].derived.at("S2") == GammaAffine{Rational{4, 21}});
  CHECK(report.steps[2].derived.at("S1") == GammaAffine{Rational{5, 28}});
  CHECK(report.steps[3].derived.at("S2") == GammaAffine{Rational{13, 42}});

  CHECK(report.steps[4].derived.at("Ef2") == GammaAffine{Rational{5, 42}, Rational{1, 21}});
  CHECK(report.steps[4].derived.at("S1") == GammaAffine{Rational{1, 4}});
  CHECK(report.steps[5].derived.at("Ef2") == GammaAffine{Rational{2, 7}, Rational{1, 21}});
}

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational{2, 4} == Rational{1, 2});
  CHECK((Rational{1, 6} + Rational{1, 3}) == Rational{1, 2});
  CHECK((Rational{4, 3} * Rational{1, 14}) == Rational{2, 21});
  CHECK((Rational{1, 4} - Rational{1, 14}) == Rational{5, 28});
  CHECK(Rational{-3, -6} == Rational{1, 2});
  CHECK(Rational{3, -6}.num() == -1);
  CHECK(Rational{1, 3}.str() == "1/3");
  CHECK(Rational{2}.str() == "2");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}
