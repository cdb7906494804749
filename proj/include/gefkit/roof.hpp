// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gefkit/measures.hpp"
#include "gefkit/qmat.hpp"

namespace gefkit {

/// Probability-weighted list of pure states reproducing a target density
/// matrix: the {p_i, psi_i} of the convex-roof definitions.
struct Decomposition {
  std::vector<double> probabilities;
  std::vector<PureState> members;

  std::size_t size() const { return members.size(); }
};

/// Budget and seed for one convex-roof minimization.
struct RoofConfig {
  std::size_t cardinality = 0;     // decomposition size k; 0 means rank + 2
  std::size_t restarts = 8;
  std::size_t max_evals = 2000;    // objective evaluations per restart
  double tol = 1e-7;               // simplex value-spread convergence
  std::uint64_t seed = 0;
};

/// Outcome of a roof minimization. The value is always an upper estimate of
/// the true convex roof: the search can miss the optimal decomposition but
/// every decomposition it does visit is feasible.
struct RoofResult {
  Bits value = 0;
  Decomposition decomposition;
  bool converged = false;
  std::size_t restarts_used = 0;
  bool is_estimate = true;
};

using PureStateFunctional = std::function<Bits(const PureState&)>;

/// Schrodinger-HJW mixture theorem: every cardinality-k decomposition of rho
/// (eigendecomposed as sum lambda_i |e_i><e_i|, rank r) arises as
/// psi~_j = sum_i conj(v_ji) sqrt(lambda_i) |e_i>, p_j = |psi~_j|^2, from a
/// k x r matrix v with orthonormal columns. Zero-probability members are
/// dropped and members equal up to global phase are merged.
Decomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& v);

/// sum_j p_j f(psi_j).
Bits roof_average(const Decomposition& d, const PureStateFunctional& f);

/// sum_j p_j |psi_j><psi_j| — the state a decomposition reproduces.
DensityMatrix mixture(const Decomposition& d);

/// Minimizes sum p_i f(psi_i) over pure-state decompositions of rho.
/// Isometries are parameterized as the first r columns of exp(A) with A
/// anti-Hermitian k x k (k^2 real parameters) and searched by Nelder-Mead
/// with random restarts plus a final local refinement. Restart 0 starts at
/// A = 0 (the eigendecomposition), so the result never exceeds the trivial
/// eigendecomposition average.
RoofResult minimize_convex_roof(const DensityMatrix& rho, const PureStateFunctional& f,
                                const RoofConfig& cfg);

namespace detail {

/// Derivative-free simplex minimizer; exposed for direct testing.
struct SimplexResult {
  std::vector<double> best_x;
  double best_value = 0;
  bool converged = false;
  std::size_t evals_used = 0;
  std::vector<double> best_trace;  // best vertex value after each iteration
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double step, std::size_t max_evals,
                          double tol);

/// exp(A) for the anti-Hermitian k x k generator packed as k^2 real
/// parameters (diagonal phases first, then re/im pairs above the diagonal).
ComplexMatrix unitary_from_generator(const std::vector<double>& params, std::size_t k);

}  // namespace detail

}  // namespace gefkit
