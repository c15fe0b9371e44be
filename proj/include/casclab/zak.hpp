#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "casclab/filter.hpp"
#include "casclab/grid_fn.hpp"

namespace casclab {

// Discrete model of the quasi-periodic Zak space: H[k][j] samples H(z_k, x_j)
// with z_k = e^{-2 pi i k / n_z} and x_j = j / n_x.  Only x in [0,1) is
// stored; every out-of-window read goes through the scaling rule
// H(z, x + 1) = z^{-1} H(z, x) via zak_at, so quasi-periodicity is structural.
struct ZakArray {
  long n_z = 0, n_x = 0;
  std::vector<std::vector<std::complex<double>>> h;  // [n_z][n_x]

  std::complex<double> zk(long k) const;  // e^{-2 pi i k / n_z}
};

ZakArray zak_zero(long n_z, long n_x);

// Quasi-periodic accessor; j may be any integer.
std::complex<double> zak_at(const ZakArray& H, long k, long j);

double zak_norm_sq(const ZakArray& H);  // mean over z of mean over x of |H|^2
double zak_dist_max(const ZakArray& A, const ZakArray& B);
ZakArray zak_add(const ZakArray& A, const ZakArray& B);

// Z h (z_k, x_j) = sum_n z_k^n h(x_j + n).  Needs n_x divisible by 2^level so
// the x-samples land consistently inside cells.
ZakArray zak_forward(const GridFnF& h, long n_z, long n_x);
ZakArray zak_forward(const GridFn& h, long n_z, long n_x);

// h(x_j + n) = (1/n_z) sum_k z_k^{-n} H[k][j], n in [-n_z/2, n_z/2); exact
// inverse when the support of h fits in that shift range.
GridFnF zak_inverse(const ZakArray& H);

// m0 sampled at the n-point z-grid (laurent kinds via the mask, band kinds
// via exact dyadic membership; n must be a power of two for band kinds).
std::vector<std::complex<double>> m0_on_grid(const QmfFilter& f, long n);

// Operator dictionary on the Zak side.
ZakArray zak_translate(const ZakArray& H, long n);        // T_n: z^{-n} H
ZakArray zak_pi(const LPolyF& alpha, const ZakArray& H);  // pi(alpha): alpha(z) H
ZakArray zak_modulate(const ZakArray& H, long s);         // E_t, t = 2 pi s / n_z
ZakArray zak_half_translate(const ZakArray& H);           // x -> x + 1/2
// M~ H(z,x) = 2^{-1/2} sum_{w^2=z} m0(w) H(w, 2x): (n_z, n_x) -> (n_z/2, n_x).
ZakArray zak_M(const QmfFilter& f, const ZakArray& H);
// M~* H(z,x) = 2^{-1/2} conj(m0(z)) (H(z^2, x/2) + z H(z^2, (x+1)/2)):
// (n_z, n_x) -> (2 n_z, n_x/2).
ZakArray zak_Mstar(const QmfFilter& f, const ZakArray& H);
// Fourier swap row; consistency-checked via F^4 = id only.  Needs n_z == n_x.
ZakArray zak_fourier_swap(const ZakArray& H);

// x-side reference operators for the dictionary consistency tests.
GridFnF grid_modulate(const GridFnF& h, double t);  // cell c *= e^{i t c 2^-J}
// M* h(y) = (1/2) sum_n conj(c_n) h((y+n)/2), one level finer than h.
GridFnF cascade_adjoint_grid(const QmfFilter& f, const GridFnF& h);

struct DictArgs {
  const QmfFilter* filter = nullptr;
  LPolyF alpha;
  long n = 0;  // translation amount or modulation index s
};
ZakArray dict_apply(const std::string& op_name, const DictArgs& args, const ZakArray& H);

// Correlation form at the z-samples by x-quadrature:
// p3[k] = (1/n_x) sum_j conj(A[k][j]) B[k][j].
std::vector<std::complex<double>> p3_sampled(const ZakArray& A, const ZakArray& B);

// Transfer operator on z-sampled data, output on the half grid:
// (R xi)(z_k^2) = (|m0(z_k)|^2 xi_k + |m0(z_{k+n/2})|^2 xi_{k+n/2}) / 2.
std::vector<std::complex<double>> ruelle_apply_sampled(
    const QmfFilter& f, const std::vector<std::complex<double>>& xi);

ZakArray zak_even_columns(const ZakArray& H);

// Commutation relations behind the transfer-operator calculus, checked on the
// grid: (1) M* pi(alpha) M = pi(R* alpha) and
// (2) M pi(alpha) M* = pi(R alpha) + pi(R(e1 alpha)) T_{1/2},
// both compared on the even x-columns.
double rel1_residual(const QmfFilter& f, const ZakArray& H, const LPolyF& alpha);
double rel2_residual(const QmfFilter& f, const ZakArray& H, const LPolyF& alpha);

struct HarnessReport {
  long n_z = 0, n_x = 0;
  int trials = 0;
  double rel1_max = 0.0, rel1_mean = 0.0;
  double rel2_max = 0.0, rel2_mean = 0.0;
};

HarnessReport commutation_harness(const QmfFilter& f, int trials, long n_z = 16, long n_x = 16,
                                  std::uint64_t seed = 0x5eed);

}  // namespace casclab
