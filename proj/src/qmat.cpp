// SPDX-License-Identifier: Apache-2.0

#include "gefkit/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gefkit {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kRankTol = 1e-12;

// Mixed-radix strides: party 0 carries the most significant digit.
std::vector<std::size_t> strides_for(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cplx> entries)
    : rows_(rows), cols_(cols), data_(entries) {
  if (data_.size() != rows * cols)
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw std::invalid_argument("hermiticity_defect: matrix not square");
  double d = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix sum: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

ComplexMatrix& ComplexMatrix::operator*=(double s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// PartyDims / SubsetSelector

PartyDims::PartyDims(std::initializer_list<std::size_t> dims) : dims_(dims) {
  for (std::size_t d : dims_)
    if (d == 0) throw std::invalid_argument("PartyDims: zero local dimension");
}

PartyDims::PartyDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_)
    if (d == 0) throw std::invalid_argument("PartyDims: zero local dimension");
}

std::size_t PartyDims::total() const {
  std::size_t t = 1;
  for (std::size_t d : dims_) t *= d;
  return t;
}

bool PartyDims::all_qubits() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

std::string PartyDims::label(std::size_t party) {
  if (party < 26) return std::string(1, static_cast<char>('A' + party));
  return "P" + std::to_string(party);
}

SubsetSelector::SubsetSelector(std::initializer_list<std::size_t> kept) : kept_(kept) {
  if (!std::is_sorted(kept_.begin(), kept_.end()) ||
      std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end())
    throw std::invalid_argument("SubsetSelector: indices must be strictly increasing");
}

SubsetSelector::SubsetSelector(std::vector<std::size_t> kept) : kept_(std::move(kept)) {
  if (!std::is_sorted(kept_.begin(), kept_.end()) ||
      std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end())
    throw std::invalid_argument("SubsetSelector: indices must be strictly increasing");
}

bool SubsetSelector::contains(std::size_t party) const {
  return std::binary_search(kept_.begin(), kept_.end(), party);
}

SubsetSelector SubsetSelector::complement(std::size_t total_parties) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < total_parties; ++p)
    if (!contains(p)) out.push_back(p);
  return SubsetSelector(std::move(out));
}

void SubsetSelector::validate_for(const PartyDims& dims) const {
  if (kept_.empty()) throw std::invalid_argument("SubsetSelector: empty keep set");
  if (kept_.back() >= dims.parties())
    throw std::out_of_range("SubsetSelector: party index out of range");
}

std::string SubsetSelector::label() const {
  std::string s;
  for (std::size_t p : kept_) s += PartyDims::label(p);
  return s;
}

std::vector<SubsetSelector> subsets_of_size(std::size_t parties, std::size_t size) {
  std::vector<SubsetSelector> out;
  if (size == 0 || size > parties) return out;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.emplace_back(idx);
    std::size_t i = size;
    while (i-- > 0) {
      if (idx[i] + (size - i) < parties) {
        ++idx[i];
        for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------
// States

PureState::PureState(std::vector<cplx> amps, PartyDims d)
    : amplitudes(std::move(amps)), dims(std::move(d)) {
  if (amplitudes.size() != dims.total())
    throw std::invalid_argument("PureState: amplitude count does not match dims");
  for (const cplx& z : amplitudes)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("PureState: non-finite amplitude");
  if (std::abs(norm() - 1.0) > kNormTol)
    throw std::invalid_argument("PureState: not normalized");
}

double PureState::norm() const {
  double n2 = 0.0;
  for (const cplx& z : amplitudes) n2 += std::norm(z);
  return std::sqrt(n2);
}

DensityMatrix::DensityMatrix(ComplexMatrix m, PartyDims d)
    : matrix(std::move(m)), dims(std::move(d)) {
  if (!matrix.is_square()) throw std::invalid_argument("DensityMatrix: not square");
  if (matrix.rows() != dims.total())
    throw std::invalid_argument("DensityMatrix: dimension does not match dims");
  if (!matrix.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
  if (matrix.hermiticity_defect() > kHermTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace() - cplx{1.0}) > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
}

// ---------------------------------------------------------------------------
// kron

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx{}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition: cyclic complex Jacobi.
//
// For each off-diagonal (p, q) the 2x2 block [[app, apq], [conj(apq), aqq]]
// is annihilated by the unitary U = [[c, s], [-conj(s), c]] with
// s = sin(theta) e^{i phi}, apq = |apq| e^{i phi}, tan(2 theta) =
// 2|apq| / (aqq - app). Rotations repeat in sweeps until the off-diagonal
// mass is negligible. At dimension <= 16 this converges in a handful of
// sweeps and needs no pivoting strategy.

namespace {

struct JacobiRotation {
  double c;
  cplx s;
};

JacobiRotation jacobi_rotation(double app, double aqq, cplx apq) {
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, phase * (t * c)};
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eig: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) throw std::invalid_argument("hermitian_eig: empty matrix");
  if (m.hermiticity_defect() > kHermTol)
    throw std::invalid_argument("hermitian_eig: input not Hermitian within 1e-10");

  // Work on the symmetrized matrix so float-level asymmetry cannot bias the
  // rotations.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.max_abs());
  const double thresh = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;

  bool converged = (n == 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= thresh) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= thresh * 1e-2) continue;
        const auto [c, s] = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        const cplx sc = std::conj(s);
        // Columns p, q of A (right-multiplication by U).
        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - sc * arq;
          a(r, q) = s * arp + c * arq;
        }
        // Rows p, q of A (left-multiplication by U^dagger).
        for (std::size_t r = 0; r < n; ++r) {
          const cplx apr = a(p, r), aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = sc * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        // Accumulate eigenvectors.
        for (std::size_t r = 0; r < n; ++r) {
          const cplx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - sc * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off > 1e-9 * scale)
      throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");
  }

  // Sort ascending; stable so degenerate clusters keep a deterministic order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigResult out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = diag[src];
    // Phase convention: largest-magnitude component real nonnegative.
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    cplx phase{1.0, 0.0};
    if (best > 0.0) phase = std::abs(v(imax, src)) / v(imax, src);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = phase * v(i, src);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial trace / marginals

namespace {

// Expands kept and traced multi-indices into a full basis index.
struct IndexComposer {
  std::vector<std::size_t> kept_strides;    // full strides of kept parties
  std::vector<std::size_t> traced_strides;  // full strides of traced parties
  std::vector<std::size_t> kept_dims;
  std::vector<std::size_t> traced_dims;
  std::size_t kept_total = 1;
  std::size_t traced_total = 1;

  IndexComposer(const PartyDims& dims, const SubsetSelector& keep) {
    const auto full = strides_for(dims.dims());
    for (std::size_t p = 0; p < dims.parties(); ++p) {
      if (keep.contains(p)) {
        kept_strides.push_back(full[p]);
        kept_dims.push_back(dims.dim(p));
        kept_total *= dims.dim(p);
      } else {
        traced_strides.push_back(full[p]);
        traced_dims.push_back(dims.dim(p));
        traced_total *= dims.dim(p);
      }
    }
  }

  // Full index for (kept flat index, traced flat index), both mixed-radix
  // with their own party ordering (most significant first).
  std::size_t compose(std::size_t kept_flat, std::size_t traced_flat) const {
    std::size_t full = 0;
    for (std::size_t i = kept_dims.size(); i-- > 0;) {
      full += (kept_flat % kept_dims[i]) * kept_strides[i];
      kept_flat /= kept_dims[i];
    }
    for (std::size_t i = traced_dims.size(); i-- > 0;) {
      full += (traced_flat % traced_dims[i]) * traced_strides[i];
      traced_flat /= traced_dims[i];
    }
    return full;
  }
};

PartyDims kept_dims_of(const PartyDims& dims, const SubsetSelector& keep) {
  std::vector<std::size_t> kd;
  for (std::size_t p : keep.kept()) kd.push_back(dims.dim(p));
  return PartyDims(std::move(kd));
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsetSelector& keep) {
  keep.validate_for(rho.dims);
  const IndexComposer ix(rho.dims, keep);
  ComplexMatrix out(ix.kept_total, ix.kept_total);
  for (std::size_t i = 0; i < ix.kept_total; ++i)
    for (std::size_t j = 0; j < ix.kept_total; ++j) {
      cplx sum = 0.0;
      for (std::size_t t = 0; t < ix.traced_total; ++t)
        sum += rho.matrix(ix.compose(i, t), ix.compose(j, t));
      out(i, j) = sum;
    }
  return DensityMatrix(std::move(out), kept_dims_of(rho.dims, keep));
}

DensityMatrix marginal(const PureState& psi, const SubsetSelector& keep) {
  keep.validate_for(psi.dims);
  const IndexComposer ix(psi.dims, keep);
  ComplexMatrix out(ix.kept_total, ix.kept_total);
  for (std::size_t i = 0; i < ix.kept_total; ++i)
    for (std::size_t j = i; j < ix.kept_total; ++j) {
      cplx sum = 0.0;
      for (std::size_t t = 0; t < ix.traced_total; ++t)
        sum += psi.amplitudes[ix.compose(i, t)] * std::conj(psi.amplitudes[ix.compose(j, t)]);
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
  // Hermitian by construction; the constructor re-checks trace/finiteness.
  return DensityMatrix(std::move(out), kept_dims_of(psi.dims, keep));
}

DensityMatrix pure_to_density(const PureState& psi) {
  const std::size_t d = psi.amplitudes.size();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
  return DensityMatrix(std::move(out), psi.dims);
}

PureState purify(const DensityMatrix& rho) {
  const EigResult eig = hermitian_eig(rho.matrix);
  const std::size_t d = rho.matrix.rows();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d; ++i)
    if (eig.eigenvalues[i] > kRankTol) keep.push_back(i);
  if (keep.empty()) throw std::invalid_argument("purify: input has no positive spectrum");
  const std::size_t r = keep.size();

  std::vector<cplx> amps(d * r);
  for (std::size_t k = 0; k < r; ++k) {
    const double w = std::sqrt(eig.eigenvalues[keep[k]]);
    for (std::size_t i = 0; i < d; ++i) amps[i * r + k] = w * eig.eigenvectors(i, keep[k]);
  }
  // Normalize away the float residue of trace != 1.
  double n2 = 0.0;
  for (const cplx& z : amps) n2 += std::norm(z);
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : amps) z *= inv;
  return PureState(std::move(amps), PartyDims({d, r}));
}

PureState random_haar_pure(const PartyDims& dims, RandomSource& rng) {
  const std::size_t d = dims.total();
  std::vector<cplx> amps(d);
  double n2 = 0.0;
  for (cplx& z : amps) {
    z = rng.gaussian_cplx();
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : amps) z *= inv;
  return PureState(std::move(amps), dims);
}

DensityMatrix random_density(const PartyDims& dims, std::size_t rank, RandomSource& rng) {
  const std::size_t d = dims.total();
  if (rank < 1 || rank > d) throw std::invalid_argument("random_density: rank out of range");
  ComplexMatrix g(d, rank);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.gaussian_cplx();
  ComplexMatrix rho = g * g.dagger();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // Pin the diagonal real and the trace exactly; GG^dagger guarantees both up
  // to rounding.
  for (std::size_t i = 0; i < d; ++i) rho(i, i) = cplx{rho(i, i).real(), 0.0};
  double diag = 0.0;
  for (std::size_t i = 0; i < d; ++i) diag += rho(i, i).real();
  rho(d - 1, d - 1) += 1.0 - diag;
  return DensityMatrix(std::move(rho), dims);
}

ComplexMatrix random_unitary(std::size_t d, RandomSource& rng) {
  if (d < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.gaussian_cplx();

  // Modified Gram-Schmidt with a re-orthogonalization pass. Normalizing by
  // the real positive column norm keeps the implicit R diagonal real
  // positive, which is exactly the phase fixing the Haar recipe needs.
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(g(i, k)) * g(i, j);
        for (std::size_t i = 0; i < d; ++i) g(i, j) -= proj * g(i, k);
      }
    }
    double n2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) n2 += std::norm(g(i, j));
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < d; ++i) g(i, j) *= inv;
  }
  return g;
}

DensityValidation validate_density(const ComplexMatrix& candidate, double tol) {
  if (!candidate.is_square())
    throw std::invalid_argument("validate_density: matrix not square");
  DensityValidation v;
  v.hermiticity_defect = candidate.hermiticity_defect();
  v.trace_defect = std::abs(candidate.trace() - cplx{1.0});
  const std::size_t n = candidate.rows();
  ComplexMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sym(i, j) = 0.5 * (candidate(i, j) + std::conj(candidate(j, i)));
  v.min_eigenvalue = hermitian_eig(sym).eigenvalues.front();
  v.hermitian_ok = v.hermiticity_defect <= tol;
  v.trace_ok = v.trace_defect <= tol;
  v.positive_ok = v.min_eigenvalue >= -tol;
  return v;
}

DensityValidation validate_density(const DensityMatrix& rho, double tol) {
  return validate_density(rho.matrix, tol);
}

}  // namespace gefkit
