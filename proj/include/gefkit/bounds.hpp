// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gefkit/gef.hpp"

namespace gefkit {

enum class Verdict { holds, violated, inconclusive, skipped };

std::string verdict_name(Verdict v);

/// Which side of "lhs <= rhs" carries the measured quantity. Upper-bound
/// entries put the measure on the left, lower-bound entries on the right, so
/// slack = rhs - lhs >= 0 always means the inequality holds.
enum class BoundOrientation { upper_bound, lower_bound };

enum class StateClass { pure_only, mixed_only, any_state };

struct InequalityInfo {
  std::string id;
  std::string summary;
  StateClass state_class = StateClass::any_state;
  BoundOrientation orientation = BoundOrientation::upper_bound;
  std::vector<std::size_t> arities;  // applicable party counts

  bool applies_to(std::size_t parties, bool pure) const;
};

/// Fixed-order registry of every inequality; ids are stable output keys.
const std::vector<InequalityInfo>& inequality_registry();
const InequalityInfo* find_inequality(const std::string& id);

struct InequalityRecord {
  std::string id;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  Verdict verdict = Verdict::skipped;
  bool lhs_estimate = false;
  bool rhs_estimate = false;
  std::string input_digest;
  double tolerance = 0;
  std::string note;
};

/// Soundness rules for three-valued verdicts. All estimates are roof values,
/// hence upper estimates of the true quantity:
///  - slack >= -tol         -> holds
///  - short slack, estimated lhs -> inconclusive (the estimate may overshoot)
///  - short slack otherwise -> violated (an overshooting rhs only makes the
///    true slack smaller).
Verdict verdict_of(double slack, bool lhs_estimate, bool rhs_estimate, double tol);

struct BoundsOptions {
  double tol_exact = 1e-8;     // entries with no roof estimates
  double tol_estimate = 1e-3;  // entries containing roof estimates
  RoofConfig roof;
};

/// Per-state cache shared by every registry entry: subsystem entropies, pair
/// EoFs, triple roofs (value + decomposition) and the top-level GEF. Seeds
/// for nested roofs derive from (roof seed, subsystem), so cached quantities
/// are identical no matter which entry asks first.
class StateEvaluator {
 public:
  StateEvaluator(PureState psi, BoundsOptions opt);
  StateEvaluator(DensityMatrix rho, BoundsOptions opt);

  bool pure() const { return pure_; }
  std::size_t parties() const { return dims_.parties(); }
  const PartyDims& dims() const { return dims_; }
  const BoundsOptions& options() const { return opt_; }
  const std::string& digest() const { return digest_; }

  /// Entropy of the marginal on `keep`.
  double entropy(const SubsetSelector& keep);
  /// E_F of the pair marginal on `keep`.
  Estimate pair_eof_of(const SubsetSelector& keep);
  /// Sum of marginal entropies over all subsets of `size`.
  double entropy_sum(std::size_t size);
  /// Sum of pair EoFs over all pairs.
  Estimate pair_eof_sum();

  /// Roof of the tri-party GEF on the triple marginal (four-party states).
  const RoofResult& triple_gef(const SubsetSelector& triple);
  /// gamma2 of that triple's roof decomposition.
  std::optional<double> triple_gamma2(const SubsetSelector& triple);
  /// Sum of the four triple-GEF roof values.
  double triple_gef_sum();
  /// Aggregate gamma2: per-triple values weighted by pair-EoF sums.
  std::optional<double> gamma2_aggregate();

  /// Tri-party pure GEF totals (exact for qubit registers).
  Estimate gef3(GefDefinition def);
  /// Four-party pure GEF total assembled from the cached pieces.
  Estimate gef4();
  /// Top-level roof for mixed input (tri or four).
  const RoofResult& mixed_roof();
  /// gamma2 of the mixed tri-party roof decomposition.
  std::optional<double> mixed_gamma2();
  /// delta2 / gamma3 of the mixed four-party roof decomposition.
  std::optional<double> mixed_delta2();
  std::optional<double> mixed_gamma3();

  DensityMatrix marginal_of(const SubsetSelector& keep) const;
  PureState pure_state() const;

 private:
  bool pure_ = false;
  PureState psi_;
  DensityMatrix rho_;  // set for mixed input
  PartyDims dims_;
  BoundsOptions opt_;
  std::string digest_;

  std::map<std::vector<std::size_t>, double> entropies_;
  std::map<std::vector<std::size_t>, Estimate> pair_eofs_;
  std::map<std::vector<std::size_t>, RoofResult> triple_roofs_;
  std::map<std::vector<std::size_t>, std::optional<double>> triple_gamma2s_;
  std::optional<Estimate> gef3_original_, gef3_modified_, gef4_;
  std::optional<RoofResult> mixed_roof_;
  bool mixed_gamma2_done_ = false, mixed_delta2_done_ = false, mixed_gamma3_done_ = false;
  std::optional<double> mixed_gamma2_, mixed_delta2_, mixed_gamma3_;
};

/// Evaluates one registry entry against the evaluator's state. Entries whose
/// arity or state class do not match throw; gamma-degenerate entries come
/// back with verdict skipped.
InequalityRecord evaluate_inequality(const std::string& id, StateEvaluator& ev);

InequalityRecord evaluate_inequality(const std::string& id, const PureState& psi,
                                     const RoofConfig& cfg, double tol);
InequalityRecord evaluate_inequality(const std::string& id, const DensityMatrix& rho,
                                     const RoofConfig& cfg, double tol);

/// Every applicable entry in registry order; `subset` (ids) narrows the run.
std::vector<InequalityRecord> run_registry(StateEvaluator& ev,
                                           const std::vector<std::string>& subset = {});
std::vector<InequalityRecord> run_registry(const PureState& psi, const BoundsOptions& opt,
                                           const std::vector<std::string>& subset = {});
std::vector<InequalityRecord> run_registry(const DensityMatrix& rho, const BoundsOptions& opt,
                                           const std::vector<std::string>& subset = {});

// ---------------------------------------------------------------------------
// Exact symbolic re-derivation of the bound-coefficient chain.

/// A bound expressed over the sum basis
///   tri:  Ef2 (pair EoFs), S2 (pair entropies), S1 (single entropies)
///   four: Eg3 (triple GEFs), Ef2, S3, S2, S1
/// with coefficients affine in gamma2.
using CoefficientVector = std::map<std::string, GammaAffine>;

struct CoefficientStep {
  std::string name;
  std::string description;
  CoefficientVector derived;
  CoefficientVector expected;
  bool matches = false;
};

struct CoefficientReport {
  std::vector<CoefficientStep> steps;
  bool all_match = false;
};

/// Re-derives the upper/lower bound coefficients from the two GEF
/// definitions by substituting the lemma inequalities (with multiplicities
/// counted, not hardcoded) and compares each step against the printed
/// rationals. Pure symbolic computation over exact rationals.
CoefficientReport derive_coefficients();

}  // namespace gefkit
