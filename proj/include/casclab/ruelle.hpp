#pragma once

#include <complex>
#include <vector>

#include "casclab/filter.hpp"

namespace casclab {

// Transfer operator on Laurent coefficients:
//   (R xi)_n = sum_k w_{2n-k} xi_k,  w = coefficients of |m0|^2,
// the coefficient form of (R xi)(z) = 1/2 sum_{w^2=z} |m0(w)|^2 xi(w).
LPoly ruelle_apply(const QmfFilter& f, const LPoly& xi);
LPolyF ruelle_apply(const QmfFilter& f, const LPolyF& xi);

// (R* xi)(z) = |m0(z)|^2 xi(z^2)
LPoly ruelle_adjoint(const QmfFilter& f, const LPoly& xi);
LPolyF ruelle_adjoint(const QmfFilter& f, const LPolyF& xi);

// Matrix of R on span{z^n : |n| <= N}, entries A[n+N][k+N] = w_{2n-k}.
// Requires N >= degree span of |m0|^2 so the subspace is exactly invariant
// (every column of R e_k then fits inside [-N, N] with nothing cut off).
struct TransferMatrix {
  long N = 0;
  bool exact = true;
  std::vector<std::vector<ExactScalar>> a;
  std::vector<std::vector<std::complex<double>>> af;  // always populated
  long dim() const { return 2 * N + 1; }
};
TransferMatrix transfer_matrix(const QmfFilter& f, long N);

// Galerkin compression of R onto span{z^n : |n| <= N} for band filters,
// assembled from K >> N circle samples (K = power of two >= 8(2N+1)):
//   B[i][n] = sum_{w^2 = z_i} chi_S(w) w^n,   G = V^H B / K,
// where V[i][n] = z_i^n has orthogonal columns (V^H V = K I).
std::vector<std::vector<std::complex<double>>> band_transfer_matrix(const QmfFilter& f, long N);

struct FixedSpace {
  long N = 0;
  bool exact = true;
  std::vector<LPoly> basis;    // exact kind
  std::vector<LPolyF> basisf;  // float / band kind
  double max_residual = 0.0;   // max coefficient residual of R xi - xi over the basis
  int dimension() const { return exact ? (int)basis.size() : (int)basisf.size(); }
};

// Basis of {xi : R xi = xi, deg span <= N}. Exact kind: fraction-free
// (Bareiss) elimination on the cleared-denominator matrix; float/band kind:
// complete-pivot elimination with rank tolerance 1e-10.
FixedSpace fixed_space(const QmfFilter& f, long N);

// True iff target lies in the exact span of basis (exact elimination).
bool in_span(const std::vector<LPoly>& basis, const LPoly& target);

struct EigenEstimate {
  std::complex<double> lambda;
  double residual = 0.0;
  bool converged = false;
};

struct SpectralScan {
  long N = 0;
  std::vector<EigenEstimate> peripheral;  // estimates with |lambda| >= 1 - 1e-6
  int mult_one = 0;      // count with |lambda - 1| <= 1e-8
  bool flagged = false;  // some |lambda| >= 1 - 1e-6 with |lambda - 1| > 1e-8
  bool inconclusive = false;
};

// Peripheral spectrum of the truncated matrix by power iteration with
// Wielandt deflation (at most 8 vectors). Non-convergence sets the
// inconclusive flag instead of erroring.
SpectralScan spectral_scan(const QmfFilter& f, long N);

// (integral of D_n * f dmu)_{n=1..n_max} = ((R^n f)_0)_{n=1..n_max}
std::vector<ExactScalar> meyer_paiva_limit(const QmfFilter& f, const LPoly& f0, int n_max);
std::vector<double> meyer_paiva_limit(const QmfFilter& f, const LPolyF& f0, int n_max);

// Shared dense float helpers (used by the scan and the float nullspace).
using CMatrix = std::vector<std::vector<std::complex<double>>>;
std::vector<std::vector<std::complex<double>>> nullspace_float(CMatrix m, double tol = 1e-10);

}  // namespace casclab
