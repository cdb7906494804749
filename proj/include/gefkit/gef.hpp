// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "gefkit/rational.hpp"
#include "gefkit/roof.hpp"

namespace gefkit {

/// A measured quantity together with whether it came from a heuristic roof
/// search (upper estimate) or an exact route.
struct Estimate {
  Bits value = 0;
  bool is_estimate = false;
};

enum class GefTermKind { entropy, eof, sub_gef };
enum class GefDefinition { original, modified };

struct GefTerm {
  SubsetSelector subsystem;
  GefTermKind kind = GefTermKind::entropy;
  Rational weight;
  Bits value = 0;
  bool is_estimate = false;
};

/// Itemized generalized-entanglement-of-formation evaluation. Weights are
/// exact rationals; total = sum weight * value.
struct GefBreakdown {
  Bits total = 0;
  GefDefinition definition = GefDefinition::original;
  std::vector<GefTerm> terms;

  bool is_estimate() const;
};

struct TripleGamma {
  SubsetSelector triple;
  std::optional<double> gamma2;
  double pair_eof_sum = 0;  // denominator magnitude
};

/// Decomposition-vs-mixture ratios. Each ratio is undefined (nullopt) when
/// its denominator is below 1e-9; the magnitudes are reported alongside.
struct RoofDiagnostics {
  std::vector<TripleGamma> gamma2_per_triple;
  std::optional<double> gamma2;  // tri: the single ratio; four: aggregate
  std::optional<double> gamma3;
  std::optional<double> delta2;
  double pair_eof_sum = 0;    // gamma2 / delta2 denominator magnitude
  double triple_gef_sum = 0;  // gamma3 denominator magnitude
};

/// Bipartite E_GF: exact Wootters value for a qubit pair, convex-roof
/// estimate of the marginal-entropy functional otherwise.
Estimate pair_eof(const DensityMatrix& rho);
Estimate pair_eof(const DensityMatrix& rho, const RoofConfig& cfg);

/// Equal-weight tri-party definition: (1/6)[sum of the three pair EoFs, the
/// three pair entropies and the three single entropies].
GefBreakdown gef_pure_tri(const PureState& psi);

/// Modified definition: weight 1/3 on the pair EoFs, 1/6 on the six
/// entropies, which scores extended Bell states as maximal (1).
GefBreakdown gef_pure_tri_modified(const PureState& psi);

/// Convex-roof extension of gef_pure_tri; pure input reduces to the pure
/// definition exactly.
RoofResult gef_mixed_tri(const DensityMatrix& rho, const RoofConfig& cfg);

/// Four-party definition: equal weight 1/14 over all 24 subsystem terms —
/// E_GF of the four triples (roof estimates), E_F of the six pairs, and the
/// entropies of triples, pairs and singles.
GefBreakdown gef_pure_four(const PureState& psi, const RoofConfig& cfg);

/// Convex roof of gef_pure_four. Nested roofs dominate the cost; budgets for
/// the member evaluations derive from cfg via inner_roof_config.
RoofResult gef_mixed_four(const DensityMatrix& rho, const RoofConfig& cfg);

/// Bipartite E_GF under the roof interface (see pair_eof).
Estimate gef_bipartite(const DensityMatrix& rho, const RoofConfig& cfg);

/// gamma2 of a tri-party state given a decomposition:
/// (1/2) [sum_i p_i sum_pairs E_F(pair of member i)] / [sum_pairs E_F(pair of rho)].
std::optional<double> gamma2_of_triple(const DensityMatrix& rho3, const Decomposition& d);

/// gamma ratios of a decomposition of a tri- or four-party state. The
/// four-party gamma2 aggregate weights each triple's gamma2 by that triple's
/// pair-EoF sum; triples with a vanishing sum carry zero weight.
RoofDiagnostics diagnostics(const DensityMatrix& rho, const Decomposition& d,
                            const RoofConfig& cfg);

/// Derived budget for roofs nested inside an outer roof objective.
RoofConfig inner_roof_config(const RoofConfig& cfg);

/// Same budgets, per-subsystem derived seed; keeps nested evaluations
/// deterministic under any evaluation order.
RoofConfig subsystem_roof_config(const RoofConfig& cfg, const SubsetSelector& subsystem);

}  // namespace gefkit
