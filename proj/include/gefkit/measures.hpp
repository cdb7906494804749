// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "gefkit/qmat.hpp"

namespace gefkit {

/// All entropies and entanglement measures are in bits (base-2 logarithm),
/// so a Bell pair scores exactly 1.
using Bits = double;

/// -sum lambda_i log2 lambda_i over the clipped spectrum (0 log 0 := 0).
/// Eigenvalues in [-1e-9, 0) are treated as float noise and clipped to 0;
/// anything below -1e-9 is an invalid state and throws.
Bits von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a probability list; same clipping policy.
Bits entropy_of_spectrum(const std::vector<double>& eigenvalues);

/// h(x) = -x log2 x - (1-x) log2(1-x). Inputs within 1e-12 of [0, 1] are
/// clamped; anything further out throws.
Bits binary_entropy(double x);

/// Wootters concurrence of a two-qubit state:
/// C = max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4)) with mu_i the
/// descending eigenvalues of sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho),
/// computed Hermitianly to avoid a general eigensolver.
double concurrence_two_qubit(const DensityMatrix& rho);

/// E_F(C) = h((1 + sqrt(1 - C^2)) / 2), monotone from E(0)=0 to E(1)=1.
Bits eof_from_concurrence(double c);

/// For pure bipartite cuts E_F equals the marginal entropy of either side.
Bits eof_pure_bipartite(const PureState& psi, const SubsetSelector& cut);

/// Exact two-qubit mixed-state entanglement of formation (Wootters).
Bits eof_two_qubit_mixed(const DensityMatrix& rho);

}  // namespace gefkit
