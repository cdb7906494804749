// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gefkit/catalog.hpp"
#include "gefkit/measures.hpp"

using namespace gefkit;

namespace {

// Closed-form oracles used to freeze expected values.
double oracle_binary_entropy(double x) {
  double s = 0.0;
  if (x > 0.0) s -= x * std::log2(x);
  if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
  return s;
}

double oracle_eof(double c) { return oracle_binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c))); }

DensityMatrix conjugated(const DensityMatrix& rho, const ComplexMatrix& u) {
  return DensityMatrix(u * rho.matrix * u.dagger(), rho.dims);
}

}  // namespace

TEST_CASE("von Neumann entropy on fixed states") {
  CHECK(von_neumann_entropy(pure_to_density(make_bell())) < 1e-10);  // pure state

  const DensityMatrix half(ComplexMatrix(2, 2, {0.5, 0.0, 0.0, 0.5}), PartyDims{2});
  CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));

  // diag(1/3, 2/3): the oracle is the binary-entropy closed form
  // h(1/3) = log2(3) - 2/3 = 0.9182958340544896.
  const DensityMatrix third(
      ComplexMatrix(2, 2, {cplx{1.0 / 3.0}, 0.0, 0.0, cplx{2.0 / 3.0}}), PartyDims{2});
  CHECK(von_neumann_entropy(third) == doctest::Approx(0.9182958340544896).epsilon(1e-10));
}

TEST_CASE("entropy rejects negative spectra beyond tolerance") {
  CHECK_THROWS_AS(entropy_of_spectrum({1.1, -0.1}), std::invalid_argument);
  CHECK(entropy_of_spectrum({1.0, -1e-10}) == 0.0);  // noise clipped
}

TEST_CASE("entropy bounds and unitary invariance") {
  RandomSource rng(31);
  for (int t = 0; t < 40; ++t) {
    const DensityMatrix rho = random_density(PartyDims{2, 2}, 1 + t % 4, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-12);
    CHECK(s <= 2.0 + 1e-9);
    const ComplexMatrix u = random_unitary(4, rng);
    CHECK(std::abs(von_neumann_entropy(conjugated(rho, u)) - s) < 1e-9);
  }
}

TEST_CASE("entropy concavity spot check") {
  RandomSource rng(32);
  for (int t = 0; t < 40; ++t) {
    const DensityMatrix rho = random_density(PartyDims{2, 2}, 2, rng);
    const DensityMatrix sig = random_density(PartyDims{2, 2}, 3, rng);
    const double lam = rng.uniform();
    ComplexMatrix blend(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        blend(i, j) = lam * rho.matrix(i, j) + (1.0 - lam) * sig.matrix(i, j);
    const double mixed = von_neumann_entropy(DensityMatrix(blend, PartyDims{2, 2}));
    const double avg = lam * von_neumann_entropy(rho) + (1.0 - lam) * von_neumann_entropy(sig);
    CHECK(mixed >= avg - 1e-9);
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(1.0 / 3.0) ==
        doctest::Approx(oracle_binary_entropy(1.0 / 3.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.3) == binary_entropy(0.7));  // symmetry
  CHECK_THROWS_AS(binary_entropy(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(1.01), std::invalid_argument);
}

TEST_CASE("concurrence of named two-qubit states") {
  CHECK(concurrence_two_qubit(pure_to_density(make_bell())) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // Separable diagonal mixture.
  ComplexMatrix diag(4, 4);
  diag(0, 0) = 0.5;
  diag(3, 3) = 0.5;
  CHECK(concurrence_two_qubit(DensityMatrix(diag, PartyDims{2, 2})) < 1e-10);

  // Werner family: closed form max(0, (3p-1)/2) verified by the eigenvalue
  // recipe.
  CHECK(concurrence_two_qubit(make_werner(0.5)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(concurrence_two_qubit(make_werner(0.9)) == doctest::Approx(0.85).epsilon(1e-9));
  CHECK(concurrence_two_qubit(make_werner(1.0 / 3.0)) < 1e-9);  // boundary of separability

  CHECK_THROWS_AS(concurrence_two_qubit(pure_to_density(make_ghz(3))), std::invalid_argument);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  RandomSource rng(33);
  for (int t = 0; t < 25; ++t) {
    const DensityMatrix rho = random_density(PartyDims{2, 2}, 1 + t % 4, rng);
    const double c = concurrence_two_qubit(rho);
    const ComplexMatrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const double c2 = concurrence_two_qubit(conjugated(rho, u));
    CHECK(std::abs(c - c2) < 1e-8);
  }
}

TEST_CASE("eof_from_concurrence endpoints and monotonicity") {
  CHECK(eof_from_concurrence(0.0) == 0.0);
  CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eof_from_concurrence(2.0 / 3.0) ==
        doctest::Approx(oracle_eof(2.0 / 3.0)).epsilon(1e-12));
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    const double v = eof_from_concurrence(i / 50.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(eof_from_concurrence(1.5), std::invalid_argument);
}

TEST_CASE("eof_pure_bipartite on fixed states") {
  CHECK(eof_pure_bipartite(make_bell(), SubsetSelector{0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eof_pure_bipartite(make_product(PartyDims{2, 2}), SubsetSelector{0}) < 1e-12);
  // W3 cut {A}: marginal diag(1/3, 2/3).
  CHECK(eof_pure_bipartite(make_w3(), SubsetSelector{0}) ==
        doctest::Approx(oracle_binary_entropy(1.0 / 3.0)).epsilon(1e-10));
  CHECK_THROWS_AS(eof_pure_bipartite(make_bell(), SubsetSelector{0, 1}), std::invalid_argument);
}

TEST_CASE("eof_pure_bipartite matches the complementary cut") {
  RandomSource rng(34);
  for (int t = 0; t < 20; ++t) {
    const PureState psi = random_haar_pure(PartyDims{2, 2, 2}, rng);
    const double a = eof_pure_bipartite(psi, SubsetSelector{0});
    const double bc = eof_pure_bipartite(psi, SubsetSelector{1, 2});
    CHECK(std::abs(a - bc) < 1e-9);
  }
}

TEST_CASE("eof_two_qubit_mixed on fixed states") {
  CHECK(eof_two_qubit_mixed(pure_to_density(make_bell())) ==
        doctest::Approx(1.0).epsilon(1e-10));
  ComplexMatrix diag(4, 4);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.25;
  diag(2, 2) = 0.25;
  diag(3, 3) = 0.25;
  CHECK(eof_two_qubit_mixed(DensityMatrix(diag, PartyDims{2, 2})) == 0.0);
  // Werner p = 0.9 has concurrence 0.85; freeze through the closed form.
  CHECK(eof_two_qubit_mixed(make_werner(0.9)) == doctest::Approx(oracle_eof(0.85)).epsilon(1e-9));
}

TEST_CASE("Wootters reduces to marginal entropy on pure states") {
  RandomSource rng(35);
  for (int t = 0; t < 30; ++t) {
    const PureState psi = random_haar_pure(PartyDims{2, 2}, rng);
    const double wootters = eof_two_qubit_mixed(pure_to_density(psi));
    const double marginal_entropy = eof_pure_bipartite(psi, SubsetSelector{0});
    CHECK(std::abs(wootters - marginal_entropy) < 1e-8);
  }
}

TEST_CASE("E_F is dominated by either marginal entropy") {
  RandomSource rng(36);
  for (int t = 0; t < 30; ++t) {
    const DensityMatrix rho = random_density(PartyDims{2, 2}, 1 + t % 4, rng);
    const double ef = eof_two_qubit_mixed(rho);
    const double sx = von_neumann_entropy(partial_trace(rho, SubsetSelector{0}));
    const double sy = von_neumann_entropy(partial_trace(rho, SubsetSelector{1}));
    CHECK(ef <= std::min(sx, sy) + 1e-8);
  }
}
