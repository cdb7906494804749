// SPDX-License-Identifier: Apache-2.0

#include "gefkit/roof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gefkit {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kDropProb = 1e-14;
constexpr double kGramTol = 1e-8;

// Eigenbasis of the target scaled by sqrt(lambda): column i is
// sqrt(lambda_i) |e_i>. Shared by every objective evaluation.
struct ScaledBasis {
  ComplexMatrix w;  // d x r
  std::size_t rank = 0;
};

ScaledBasis scaled_eigenbasis(const DensityMatrix& rho) {
  const EigResult eig = hermitian_eig(rho.matrix);
  const std::size_t d = rho.matrix.rows();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d; ++i)
    if (eig.eigenvalues[i] > kRankTol) keep.push_back(i);
  if (keep.empty())
    throw std::invalid_argument("convex roof: target has no positive spectrum");
  ScaledBasis b;
  b.rank = keep.size();
  b.w = ComplexMatrix(d, b.rank);
  for (std::size_t k = 0; k < b.rank; ++k) {
    const double s = std::sqrt(eig.eigenvalues[keep[k]]);
    for (std::size_t i = 0; i < d; ++i) b.w(i, k) = s * eig.eigenvectors(i, keep[k]);
  }
  return b;
}

// Members from the first r columns of a k x k unitary (or any k x r isometry
// block) against a precomputed scaled basis.
Decomposition build_decomposition(const ScaledBasis& basis, const ComplexMatrix& v,
                                  const PartyDims& dims) {
  const std::size_t d = basis.w.rows();
  const std::size_t r = basis.rank;
  const std::size_t k = v.rows();
  Decomposition out;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<cplx> amps(d);
    double p = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
      cplx z = 0.0;
      for (std::size_t i = 0; i < r; ++i) z += std::conj(v(j, i)) * basis.w(x, i);
      amps[x] = z;
      p += std::norm(z);
    }
    if (p < kDropProb) continue;
    const double inv = 1.0 / std::sqrt(p);
    for (cplx& z : amps) z *= inv;
    // Merge with an existing member equal up to global phase.
    bool merged = false;
    for (std::size_t m = 0; m < out.members.size() && !merged; ++m) {
      cplx ov = 0.0;
      for (std::size_t x = 0; x < d; ++x)
        ov += std::conj(out.members[m].amplitudes[x]) * amps[x];
      if (std::abs(ov) > 1.0 - 1e-12) {
        out.probabilities[m] += p;
        merged = true;
      }
    }
    if (!merged) {
      out.probabilities.push_back(p);
      out.members.emplace_back(std::move(amps), dims);
    }
  }
  return out;
}

}  // namespace

Decomposition decomposition_from_isometry(const DensityMatrix& rho, const ComplexMatrix& v) {
  const ScaledBasis basis = scaled_eigenbasis(rho);
  if (v.cols() != basis.rank)
    throw std::invalid_argument("decomposition_from_isometry: column count must equal rank");
  if (v.rows() < v.cols())
    throw std::invalid_argument("decomposition_from_isometry: fewer rows than columns");
  // Columns must be orthonormal.
  for (std::size_t a = 0; a < v.cols(); ++a)
    for (std::size_t b = a; b < v.cols(); ++b) {
      cplx g = 0.0;
      for (std::size_t i = 0; i < v.rows(); ++i) g += std::conj(v(i, a)) * v(i, b);
      const cplx expect = (a == b) ? cplx{1.0} : cplx{0.0};
      if (std::abs(g - expect) > kGramTol)
        throw std::invalid_argument("decomposition_from_isometry: v is not an isometry");
    }
  return build_decomposition(basis, v, rho.dims);
}

Bits roof_average(const Decomposition& d, const PureStateFunctional& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) acc += d.probabilities[i] * f(d.members[i]);
  return acc;
}

DensityMatrix mixture(const Decomposition& d) {
  if (d.members.empty()) throw std::invalid_argument("mixture: empty decomposition");
  const std::size_t n = d.members.front().amplitudes.size();
  ComplexMatrix acc(n, n);
  for (std::size_t m = 0; m < d.size(); ++m) {
    const double p = d.probabilities[m];
    const auto& amp = d.members[m].amplitudes;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) acc(i, j) += p * amp[i] * std::conj(amp[j]);
  }
  return DensityMatrix(std::move(acc), d.members.front().dims);
}

// ---------------------------------------------------------------------------
// Generator parameterization

namespace detail {

ComplexMatrix unitary_from_generator(const std::vector<double>& params, std::size_t k) {
  if (params.size() != k * k)
    throw std::invalid_argument("unitary_from_generator: need k^2 parameters");
  // A = iH with H Hermitian; exp(A) = V exp(i diag) V^dagger.
  ComplexMatrix h(k, k);
  std::size_t at = 0;
  for (std::size_t j = 0; j < k; ++j) h(j, j) = params[at++];
  for (std::size_t p = 0; p + 1 < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) {
      const double re = params[at++];
      const double im = params[at++];
      h(p, q) = cplx{re, -im};
      h(q, p) = cplx{re, im};
    }
  const EigResult eig = hermitian_eig(h);
  ComplexMatrix u(k, k);
  for (std::size_t m = 0; m < k; ++m) {
    const cplx ph = std::polar(1.0, eig.eigenvalues[m]);
    for (std::size_t i = 0; i < k; ++i) {
      const cplx left = ph * eig.eigenvectors(i, m);
      for (std::size_t j = 0; j < k; ++j)
        u(i, j) += left * std::conj(eig.eigenvectors(j, m));
    }
  }
  return u;
}

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double step, std::size_t max_evals,
                          double tol) {
  const std::size_t n = x0.size();
  SimplexResult res;
  if (n == 0) {
    res.best_x = x0;
    res.best_value = f(x0);
    res.converged = true;
    res.evals_used = 1;
    return res;
  }

  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 1; i <= n; ++i) xs[i][i - 1] += step;
  // The initial simplex is always evaluated in full, even if it overruns a
  // very small budget; the main loop honors the cap.
  for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  bool converged = false;
  while (evals < max_evals) {
    sort_simplex();
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    res.best_trace.push_back(fs[best]);
    if (fs[worst] - fs[best] < tol) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += xs[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t d = 0; d < n; ++d)
        x[d] = centroid[d] + coeff * (centroid[d] - xs[worst][d]);
      return x;
    };

    std::vector<double> xr = blend(kReflect);
    const double fr = eval(xr);
    if (fr < fs[best]) {
      if (evals < max_evals) {
        std::vector<double> xe = blend(kExpand);
        const double fe = eval(xe);
        if (fe < fr) {
          xs[worst] = std::move(xe);
          fs[worst] = fe;
          continue;
        }
      }
      xs[worst] = std::move(xr);
      fs[worst] = fr;
      continue;
    }
    if (fr < fs[second]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
      continue;
    }
    if (evals >= max_evals) break;
    // Contraction: outside if the reflection helped at all, inside otherwise.
    const bool outside = fr < fs[worst];
    std::vector<double> xc = blend(outside ? kContract : -kContract);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fs[worst])) {
      xs[worst] = std::move(xc);
      fs[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= n && evals < max_evals; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d)
        xs[i][d] = xs[best][d] + kShrink * (xs[i][d] - xs[best][d]);
      fs[i] = eval(xs[i]);
    }
  }

  sort_simplex();
  res.best_x = xs[order[0]];
  res.best_value = fs[order[0]];
  res.converged = converged;
  res.evals_used = evals;
  return res;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Roof minimization

RoofResult minimize_convex_roof(const DensityMatrix& rho, const PureStateFunctional& f,
                                const RoofConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("minimize_convex_roof: restarts >= 1");
  const ScaledBasis basis = scaled_eigenbasis(rho);
  const std::size_t k = cfg.cardinality == 0 ? basis.rank + 2 : cfg.cardinality;
  if (k < basis.rank)
    throw std::invalid_argument("minimize_convex_roof: cardinality below target rank");
  const std::size_t nparams = k * k;

  const auto objective = [&](const std::vector<double>& params) {
    const ComplexMatrix u = detail::unitary_from_generator(params, k);
    const Decomposition d = build_decomposition(basis, u, rho.dims);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) acc += d.probabilities[i] * f(d.members[i]);
    return acc;
  };

  RandomSource rng(cfg.seed);
  std::vector<double> best_x(nparams, 0.0);
  double best_value = 0.0;
  bool best_converged = false;
  bool have_best = false;

  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<double> x0(nparams, 0.0);
    double step = 0.3;
    if (restart > 0) {
      RandomSource r = rng.split(restart);
      for (double& x : x0) x = 0.8 * r.gaussian();
      step = 0.4;
    }
    const detail::SimplexResult sr =
        detail::nelder_mead(objective, x0, step, cfg.max_evals, cfg.tol);
    // Strict improvement keeps the lowest restart index on exact ties.
    if (!have_best || sr.best_value < best_value) {
      have_best = true;
      best_value = sr.best_value;
      best_x = sr.best_x;
      best_converged = sr.converged;
    }
  }

  // Local refinement around the winner with a tighter simplex.
  {
    const detail::SimplexResult sr =
        detail::nelder_mead(objective, best_x, 0.03, cfg.max_evals / 2 + 1, cfg.tol);
    if (sr.best_value < best_value) {
      best_value = sr.best_value;
      best_x = sr.best_x;
      best_converged = sr.converged;
    }
  }

  RoofResult out;
  out.decomposition =
      build_decomposition(basis, detail::unitary_from_generator(best_x, k), rho.dims);
  out.value = roof_average(out.decomposition, f);
  out.converged = best_converged;
  out.restarts_used = cfg.restarts;
  out.is_estimate = true;
  return out;
}

}  // namespace gefkit
