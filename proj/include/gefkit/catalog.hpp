// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gefkit/qmat.hpp"

namespace gefkit {

using AnyState = std::variant<PureState, DensityMatrix>;

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
PureState make_ghz(std::size_t parties);

/// (|001> + |010> + |100>)/sqrt(3).
PureState make_w3();

/// |Phi+> two-qubit Bell state.
PureState make_bell();

/// Spectator qubit cos(theta)|0> + e^{i phi} sin(theta)|1>.
std::vector<cplx> make_spectator(double theta, double phi);

enum class EbVariant { ab, ac1, ac2, bc };

/// The four extended Bell states: a Bell pair on two parties tensored with
/// (or interleaved around) an arbitrary spectator qubit |chi>. `sign` picks
/// the +/- branch of the Bell pair.
PureState make_extended_bell(EbVariant variant, double theta, double phi, int sign);

/// p |Phi+><Phi+| + (1-p) I/4.
DensityMatrix make_werner(double p);

/// |0...0> on the given local dimensions.
PureState make_product(const PartyDims& dims);

struct CatalogParams {
  std::size_t n = 3;                // ghz party count
  double p = 1.0;                   // werner weight
  double theta = 0.0, phi = 0.0;    // spectator angles
  int sign = +1;                    // Bell-pair branch
  std::vector<std::size_t> dims;    // product dims
};

/// Name-based construction: ghz, w3, bell, eb_ab, eb_ac1, eb_ac2, eb_bc,
/// werner, product. Throws on unknown names or invalid parameters.
AnyState catalog_state(const std::string& name, const CatalogParams& params);

std::vector<std::string> catalog_names();

}  // namespace gefkit
