// SPDX-License-Identifier: Apache-2.0

#include "gefkit/gef.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gefkit {

namespace {

constexpr double kDenomTol = 1e-9;
constexpr std::uint64_t kInnerTag = 0x4E455354;   // nested-roof seed salt
constexpr std::uint64_t kSubsetTag = 0x53554253;  // per-subsystem seed salt

std::uint64_t subset_tag(const SubsetSelector& s) {
  std::uint64_t mask = 0;
  for (std::size_t p : s.kept()) mask |= (1ull << p);
  return kSubsetTag ^ (mask << 8);
}

// Fallback budgets for pair roofs requested without an explicit config
// (non-qubit pairs inside gef_pure_tri). In-scope states are qubit
// registers, so this path is exercised only by higher-dimensional inputs.
RoofConfig default_pair_roof() {
  RoofConfig cfg;
  cfg.restarts = 4;
  cfg.max_evals = 800;
  cfg.seed = 0x0E0F;
  return cfg;
}

std::size_t numerical_rank(const DensityMatrix& rho) {
  const EigResult eig = hermitian_eig(rho.matrix);
  std::size_t r = 0;
  for (double lambda : eig.eigenvalues)
    if (lambda > 1e-12) ++r;
  return r;
}

PureState top_eigenvector(const DensityMatrix& rho) {
  const EigResult eig = hermitian_eig(rho.matrix);
  const std::size_t d = rho.matrix.rows();
  std::vector<cplx> amps(d);
  double n2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    amps[i] = eig.eigenvectors(i, d - 1);
    n2 += std::norm(amps[i]);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : amps) z *= inv;
  return PureState(std::move(amps), rho.dims);
}

RoofResult pure_shortcut(const PureState& psi, Bits value) {
  RoofResult out;
  out.value = value;
  out.decomposition.probabilities = {1.0};
  out.decomposition.members = {psi};
  out.converged = true;
  out.restarts_used = 0;
  out.is_estimate = true;
  return out;
}

}  // namespace

bool GefBreakdown::is_estimate() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const GefTerm& t) { return t.is_estimate; });
}

RoofConfig inner_roof_config(const RoofConfig& cfg) {
  // Nested roofs run inside every outer objective evaluation, so their
  // budget has to be a small fraction of the outer one. Estimates stay
  // sound at any budget; only their tightness suffers.
  RoofConfig inner = cfg;
  inner.restarts = std::max<std::size_t>(1, cfg.restarts / 4);
  inner.max_evals = std::clamp<std::size_t>(cfg.max_evals / 8, 40, 250);
  inner.seed = RandomSource::derive(cfg.seed, kInnerTag);
  return inner;
}

RoofConfig subsystem_roof_config(const RoofConfig& cfg, const SubsetSelector& subsystem) {
  RoofConfig out = cfg;
  out.seed = RandomSource::derive(cfg.seed, subset_tag(subsystem));
  return out;
}

Estimate pair_eof(const DensityMatrix& rho, const RoofConfig& cfg) {
  if (rho.dims.parties() != 2)
    throw std::invalid_argument("pair_eof: state must have two parties");
  if (rho.dims.all_qubits()) return {eof_two_qubit_mixed(rho), false};
  const RoofResult roof = minimize_convex_roof(
      rho, [](const PureState& psi) { return eof_pure_bipartite(psi, SubsetSelector{0}); },
      cfg);
  return {roof.value, true};
}

Estimate pair_eof(const DensityMatrix& rho) { return pair_eof(rho, default_pair_roof()); }

namespace {

GefBreakdown gef_tri_impl(const PureState& psi, GefDefinition def) {
  if (psi.dims.parties() != 3)
    throw std::invalid_argument("gef_pure_tri: state must have three parties");
  const Rational eof_weight = def == GefDefinition::modified ? Rational{1, 3} : Rational{1, 6};
  const Rational ent_weight{1, 6};

  GefBreakdown out;
  out.definition = def;
  for (const SubsetSelector& pair : subsets_of_size(3, 2)) {
    const DensityMatrix rho2 = marginal(psi, pair);
    const Estimate ef = pair_eof(rho2);
    out.terms.push_back({pair, GefTermKind::eof, eof_weight, ef.value, ef.is_estimate});
    out.terms.push_back({pair, GefTermKind::entropy, ent_weight, von_neumann_entropy(rho2), false});
  }
  for (const SubsetSelector& single : subsets_of_size(3, 1))
    out.terms.push_back({single, GefTermKind::entropy, ent_weight,
                         von_neumann_entropy(marginal(psi, single)), false});

  for (const GefTerm& t : out.terms) out.total += t.weight.to_double() * t.value;
  return out;
}

}  // namespace

GefBreakdown gef_pure_tri(const PureState& psi) {
  return gef_tri_impl(psi, GefDefinition::original);
}

GefBreakdown gef_pure_tri_modified(const PureState& psi) {
  return gef_tri_impl(psi, GefDefinition::modified);
}

RoofResult gef_mixed_tri(const DensityMatrix& rho, const RoofConfig& cfg) {
  if (rho.dims.parties() != 3)
    throw std::invalid_argument("gef_mixed_tri: state must have three parties");
  if (numerical_rank(rho) == 1) {
    const PureState psi = top_eigenvector(rho);
    return pure_shortcut(psi, gef_pure_tri(psi).total);
  }
  return minimize_convex_roof(
      rho, [](const PureState& psi) { return gef_pure_tri(psi).total; }, cfg);
}

GefBreakdown gef_pure_four(const PureState& psi, const RoofConfig& cfg) {
  if (psi.dims.parties() != 4)
    throw std::invalid_argument("gef_pure_four: state must have four parties");
  const Rational w{1, 14};

  GefBreakdown out;
  for (const SubsetSelector& triple : subsets_of_size(4, 3)) {
    const DensityMatrix rho3 = marginal(psi, triple);
    const RoofResult sub = gef_mixed_tri(rho3, subsystem_roof_config(cfg, triple));
    out.terms.push_back({triple, GefTermKind::sub_gef, w, sub.value, true});
    out.terms.push_back({triple, GefTermKind::entropy, w, von_neumann_entropy(rho3), false});
  }
  for (const SubsetSelector& pair : subsets_of_size(4, 2)) {
    const DensityMatrix rho2 = marginal(psi, pair);
    const Estimate ef = pair_eof(rho2);
    out.terms.push_back({pair, GefTermKind::eof, w, ef.value, ef.is_estimate});
    out.terms.push_back({pair, GefTermKind::entropy, w, von_neumann_entropy(rho2), false});
  }
  for (const SubsetSelector& single : subsets_of_size(4, 1))
    out.terms.push_back({single, GefTermKind::entropy, w,
                         von_neumann_entropy(marginal(psi, single)), false});

  for (const GefTerm& t : out.terms) out.total += t.weight.to_double() * t.value;
  return out;
}

RoofResult gef_mixed_four(const DensityMatrix& rho, const RoofConfig& cfg) {
  if (rho.dims.parties() != 4)
    throw std::invalid_argument("gef_mixed_four: state must have four parties");
  if (numerical_rank(rho) == 1) {
    const PureState psi = top_eigenvector(rho);
    return pure_shortcut(psi, gef_pure_four(psi, cfg).total);
  }
  const RoofConfig inner = inner_roof_config(cfg);
  return minimize_convex_roof(
      rho, [&inner](const PureState& psi) { return gef_pure_four(psi, inner).total; }, cfg);
}

Estimate gef_bipartite(const DensityMatrix& rho, const RoofConfig& cfg) {
  return pair_eof(rho, cfg);
}

std::optional<double> gamma2_of_triple(const DensityMatrix& rho3, const Decomposition& d) {
  if (rho3.dims.parties() != 3)
    throw std::invalid_argument("gamma2_of_triple: state must have three parties");
  double den = 0.0;
  for (const SubsetSelector& pair : subsets_of_size(3, 2))
    den += pair_eof(partial_trace(rho3, pair)).value;
  if (den < kDenomTol) return std::nullopt;
  double num = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double member_sum = 0.0;
    for (const SubsetSelector& pair : subsets_of_size(3, 2))
      member_sum += pair_eof(marginal(d.members[i], pair)).value;
    num += d.probabilities[i] * member_sum;
  }
  return 0.5 * num / den;
}

RoofDiagnostics diagnostics(const DensityMatrix& rho, const Decomposition& d,
                            const RoofConfig& cfg) {
  const std::size_t parties = rho.dims.parties();
  if (parties != 3 && parties != 4)
    throw std::invalid_argument("diagnostics: state must have three or four parties");
  if (d.members.empty() || d.members.front().dims != rho.dims)
    throw std::invalid_argument("diagnostics: decomposition does not match the state");
  {
    const DensityMatrix mix = mixture(d);
    double dev = 0.0;
    for (std::size_t i = 0; i < mix.matrix.rows(); ++i)
      for (std::size_t j = 0; j < mix.matrix.cols(); ++j)
        dev = std::max(dev, std::abs(mix.matrix(i, j) - rho.matrix(i, j)));
    if (dev > 1e-6)
      throw std::invalid_argument("diagnostics: decomposition does not reproduce the state");
  }

  RoofDiagnostics out;
  for (const SubsetSelector& pair : subsets_of_size(parties, 2))
    out.pair_eof_sum += pair_eof(partial_trace(rho, pair)).value;

  if (parties == 3) {
    out.gamma2 = gamma2_of_triple(rho, d);
    out.gamma2_per_triple.push_back(
        {SubsetSelector{0, 1, 2}, out.gamma2, out.pair_eof_sum});
    return out;
  }

  // Four parties. Per-triple gamma2 uses each triple marginal's own roof
  // decomposition; the aggregate weights by the triple's pair-EoF sum.
  double agg_num = 0.0;
  for (const SubsetSelector& triple : subsets_of_size(4, 3)) {
    const DensityMatrix rho3 = partial_trace(rho, triple);
    const RoofResult sub = gef_mixed_tri(rho3, subsystem_roof_config(cfg, triple));
    out.triple_gef_sum += sub.value;
    TripleGamma tg;
    tg.triple = triple;
    for (const SubsetSelector& pair : subsets_of_size(3, 2))
      tg.pair_eof_sum += pair_eof(partial_trace(rho3, pair)).value;
    tg.gamma2 = gamma2_of_triple(rho3, sub.decomposition);
    if (tg.gamma2) agg_num += *tg.gamma2 * tg.pair_eof_sum;
    out.gamma2_per_triple.push_back(std::move(tg));
  }
  if (out.pair_eof_sum >= kDenomTol) out.gamma2 = agg_num / (2.0 * out.pair_eof_sum);

  // delta2: member pair-EoF average vs the mixture's pair EoFs.
  if (out.pair_eof_sum >= kDenomTol) {
    double num = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double member_sum = 0.0;
      for (const SubsetSelector& pair : subsets_of_size(4, 2))
        member_sum += pair_eof(marginal(d.members[i], pair)).value;
      num += d.probabilities[i] * member_sum;
    }
    out.delta2 = (3.0 / 7.0) * num / out.pair_eof_sum;
  }

  // gamma3: member triple-GEF average vs the mixture's triple GEFs, both as
  // roof estimates with matching derived seeds.
  if (out.triple_gef_sum >= kDenomTol) {
    const RoofConfig inner = inner_roof_config(cfg);
    double num = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double member_sum = 0.0;
      for (const SubsetSelector& triple : subsets_of_size(4, 3))
        member_sum +=
            gef_mixed_tri(marginal(d.members[i], triple), subsystem_roof_config(inner, triple))
                .value;
      num += d.probabilities[i] * member_sum;
    }
    out.gamma3 = (2.0 / 7.0) * num / out.triple_gef_sum;
  }
  return out;
}

}  // namespace gefkit
