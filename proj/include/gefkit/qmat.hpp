// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "gefkit/random.hpp"

namespace gefkit {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Everything in scope lives in dimension
/// <= 16 (four qubits), so there is no structured or sparse storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix dagger() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  /// max |M - M^dagger| entry; 0 for the empty matrix.
  double hermiticity_defect() const;
  bool all_finite() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  ComplexMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Ordered per-party local dimensions. Party labels are implicit by position
/// (A, B, C, D). Dimension-1 parties are legal so that purifications of pure
/// states (rank-1 ancilla) remain representable.
class PartyDims {
 public:
  PartyDims() = default;
  PartyDims(std::initializer_list<std::size_t> dims);
  explicit PartyDims(std::vector<std::size_t> dims);

  std::size_t parties() const { return dims_.size(); }
  std::size_t dim(std::size_t party) const { return dims_.at(party); }
  std::size_t total() const;
  const std::vector<std::size_t>& dims() const { return dims_; }

  bool all_qubits() const;
  static std::string label(std::size_t party);  // "A", "B", ...

  friend bool operator==(const PartyDims& a, const PartyDims& b) { return a.dims_ == b.dims_; }
  friend bool operator!=(const PartyDims& a, const PartyDims& b) { return !(a == b); }

 private:
  std::vector<std::size_t> dims_;
};

/// Strictly increasing party positions to keep in a reduction.
class SubsetSelector {
 public:
  SubsetSelector() = default;
  SubsetSelector(std::initializer_list<std::size_t> kept);
  explicit SubsetSelector(std::vector<std::size_t> kept);

  std::size_t count() const { return kept_.size(); }
  const std::vector<std::size_t>& kept() const { return kept_; }
  bool contains(std::size_t party) const;
  SubsetSelector complement(std::size_t total_parties) const;
  void validate_for(const PartyDims& dims) const;
  std::string label() const;  // "AB", "ACD", ...

  friend bool operator==(const SubsetSelector& a, const SubsetSelector& b) {
    return a.kept_ == b.kept_;
  }
  friend bool operator<(const SubsetSelector& a, const SubsetSelector& b) {
    return a.kept_ < b.kept_;
  }

 private:
  std::vector<std::size_t> kept_;
};

/// Normalized amplitude vector with per-party dimensions. Party 0 owns the
/// most significant digit of the basis index.
struct PureState {
  std::vector<cplx> amplitudes;
  PartyDims dims;

  PureState() = default;
  PureState(std::vector<cplx> amps, PartyDims d);

  double norm() const;
};

/// Hermitian, unit-trace, positive semidefinite operator with party labels.
/// Construction checks shape, finiteness, Hermiticity and trace; positivity
/// is enforced where the spectrum is actually consumed (entropy, validation),
/// so hot paths do not pay for an eigendecomposition per intermediate.
struct DensityMatrix {
  ComplexMatrix matrix;
  PartyDims dims;

  DensityMatrix() = default;
  DensityMatrix(ComplexMatrix m, PartyDims d);
};

struct EigResult {
  std::vector<double> eigenvalues;   // ascending
  ComplexMatrix eigenvectors;        // columns, orthonormal
};

struct DensityValidation {
  double hermiticity_defect = 0;
  double trace_defect = 0;
  double min_eigenvalue = 0;
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool positive_ok = false;
  bool ok() const { return hermitian_ok && trace_ok && positive_ok; }
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Input is symmetrized as (M + M^dagger)/2 first and must be
/// Hermitian within 1e-10. Eigenvalues ascend; each eigenvector's largest
/// component is made real nonnegative.
EigResult hermitian_eig(const ComplexMatrix& m);

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsetSelector& keep);

/// Reduced density matrix of a pure state, contracted directly from the
/// amplitudes. Equal to partial_trace(pure_to_density(psi), keep) but without
/// forming the full |psi><psi|.
DensityMatrix marginal(const PureState& psi, const SubsetSelector& keep);

DensityMatrix pure_to_density(const PureState& psi);

/// Purification: a two-party pure state on system x ancilla whose ancilla
/// dimension equals the numerical rank of rho, with
/// partial_trace(ancilla) == rho.
PureState purify(const DensityMatrix& rho);

/// Haar-distributed pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized.
PureState random_haar_pure(const PartyDims& dims, RandomSource& rng);

/// rho = G G^dagger / tr(G G^dagger) with G a (d x rank) complex Ginibre
/// matrix; numerical rank <= rank.
DensityMatrix random_density(const PartyDims& dims, std::size_t rank, RandomSource& rng);

/// Haar-distributed unitary: Ginibre + modified Gram-Schmidt QR with the R
/// diagonal kept real positive.
ComplexMatrix random_unitary(std::size_t d, RandomSource& rng);

/// Reports Hermiticity defect, trace defect and minimum eigenvalue of a
/// candidate density matrix (the spectrum is taken on the symmetrized
/// matrix, so ill-formed candidates still get a report).
DensityValidation validate_density(const ComplexMatrix& candidate, double tol);
DensityValidation validate_density(const DensityMatrix& rho, double tol);

/// All nonempty proper party subsets of the given size.
std::vector<SubsetSelector> subsets_of_size(std::size_t parties, std::size_t size);

}  // namespace gefkit
