// SPDX-License-Identifier: Apache-2.0

#include "gefkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gefkit {

namespace {

constexpr double kNegEigTol = 1e-9;   // below this magnitude of negativity: invalid state
constexpr double kClampTol = 1e-12;

double clip_probability(double lambda) {
  if (lambda < -kNegEigTol)
    throw std::invalid_argument("entropy: eigenvalue below -1e-9, state not positive");
  return lambda < 0.0 ? 0.0 : lambda;
}

// sigma_y x sigma_y is real in the computational basis.
const ComplexMatrix& spin_flip_matrix() {
  static const ComplexMatrix yy(4, 4,
                                {0, 0, 0, -1,
                                 0, 0, 1, 0,
                                 0, 1, 0, 0,
                                 -1, 0, 0, 0});
  return yy;
}

}  // namespace

Bits entropy_of_spectrum(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    const double p = clip_probability(lambda);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s < 0.0 ? 0.0 : s;
}

Bits von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eig(rho.matrix).eigenvalues);
}

Bits binary_entropy(double x) {
  if (x < -kClampTol || x > 1.0 + kClampTol)
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  if (rho.dims.dims() != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument("concurrence_two_qubit: dims must be (2, 2)");

  const EigResult eig = hermitian_eig(rho.matrix);
  ComplexMatrix sqrt_rho(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    // Spectral noise of order 1e-16 would contribute 1e-8 after the square
    // root; clip it before it enters the subtractions.
    const double lambda = clip_probability(eig.eigenvalues[k]);
    const double w = lambda <= 1e-13 ? 0.0 : std::sqrt(lambda);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        sqrt_rho(i, j) += w * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
  }

  const ComplexMatrix& yy = spin_flip_matrix();
  const ComplexMatrix flipped = yy * rho.matrix.conj() * yy;
  const ComplexMatrix herm = sqrt_rho * flipped * sqrt_rho;

  std::vector<double> mu = hermitian_eig(herm).eigenvalues;  // ascending
  double c = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (mu[k] < -1e-10)
      throw std::invalid_argument("concurrence_two_qubit: state not positive");
    const double root = mu[k] <= 1e-13 ? 0.0 : std::sqrt(mu[k]);
    c += (k == 3) ? root : -root;
  }
  return std::clamp(c, 0.0, 1.0);
}

Bits eof_from_concurrence(double c) {
  if (c < -kClampTol || c > 1.0 + kClampTol)
    throw std::invalid_argument("eof_from_concurrence: concurrence outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

Bits eof_pure_bipartite(const PureState& psi, const SubsetSelector& cut) {
  cut.validate_for(psi.dims);
  if (cut.count() >= psi.dims.parties())
    throw std::invalid_argument("eof_pure_bipartite: cut must be a proper subset");
  return von_neumann_entropy(marginal(psi, cut));
}

Bits eof_two_qubit_mixed(const DensityMatrix& rho) {
  return eof_from_concurrence(concurrence_two_qubit(rho));
}

}  // namespace gefkit
