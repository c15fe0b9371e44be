#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "casclab/filter.hpp"
#include "casclab/fourier_grid.hpp"
#include "casclab/interval_set.hpp"
#include "casclab/laurent.hpp"

namespace casclab {

// Frequency-domain supports of the shift/unitary splitting.  All endpoints in
// pi units.  E is the kernel support (period 4); F[k-1] holds F_k (period
// 2^{k+1}) for k = 1..k_max+1; Ek[k-1] holds E_k = F_{k+1} \ F_k at the lifted
// common period 2^{k+2}; E_inf_window is the window complement of F_{k_max+1}.
struct WoldSets {
  PeriodicIntervalSet E;
  std::vector<PeriodicIntervalSet> F;
  std::vector<PeriodicIntervalSet> Ek;
  IntervalSet E_inf_window;
  Rat window;  // half-width W: sets reported on [-W, W)
  int k_max = 0;
  std::string note;
};

// E(m0) = 2 c0(N(m0)) + 4 pi Z, the Fourier support of ker M*.  Laurent
// filters have measure-zero N, hence an empty set.
PeriodicIntervalSet kernel_set(const QmfFilter& f);

WoldSets wold_sets(const QmfFilter& f, int k_max, const Rat& window_half_width);

struct SplitParts {
  FourierGridFn h_inf;  // indicator of E_inf_window applied to the samples
  FourierGridFn h_B;    // the rest
};

SplitParts split_projection(const QmfFilter& f, const FourierGridFn& fhat,
                            const WoldSets& w);

// Shannon cascade split trace: one resolution ladder on hat h with the static
// membership test omega in [-pi, pi), which separates M^n h_inf from M^n h_B
// exactly at every step (the pass-band aliases stay outside the window).
struct ShannonRow {
  int n = 0;
  double inf_diff = 0.0;  // ||M^n h_inf - phi||_2
  double B_norm = 0.0;    // ||M^n h_B||_2
  double total = 0.0;     // ||M^n h - phi||_2
};

std::vector<ShannonRow> shannon_experiment(int n_max);

// Abstract sub-isometry model: level-graded vectors on an N-point circle
// grid.  M prepends a zero level; M* drops level 0 and applies the transfer
// weight; pi(alpha) multiplies level k by alpha(z^{2^k}).  The inner product
// carries the weight W_k = prod_{i<k} |m0(z^{2^i})|^2.
struct ModelVec {
  std::vector<std::vector<std::complex<double>>> level;
};

ModelVec model_M(const ModelVec& v);
ModelVec model_Mstar(const QmfFilter& f, long N, const ModelVec& v);
ModelVec model_pi(long N, const LPolyF& alpha, const ModelVec& v);
std::complex<double> model_inner(const QmfFilter& f, long N, const ModelVec& a,
                                 const ModelVec& b);

struct ModelReport {
  long N = 0;
  int n_levels = 0;
  int trials = 0;
  double adjoint_max = 0.0;   // <Mv, w> vs <v, M*w>
  double rel_rstar_max = 0.0; // M* pi(alpha) M vs pi(R* alpha)
  double rel_shift_max = 0.0; // pi(alpha) M vs M pi(alpha(z^2))
  double kernel_max = 0.0;    // M*(l0, 0, ...) = 0
  double wold_max = 0.0;      // ||v||^2 = sum_n ||M^n (level-n slice)||^2
};

ModelReport abstract_model_check(const QmfFilter& f, int n_levels, long N, int trials,
                                 std::uint64_t seed = 0x5eed);

// Exact commutant test: is alpha0 R-fixed, and does the pointwise commutation
// identity |m0|^2 alpha0(z) = |m0|^2 alpha0(z^2) hold?  When it fails, the
// witness is the highest positive degree carrying a nonzero difference.
struct CommutantReport {
  bool r_fixed = false;
  bool identity_holds = false;
  long witness_degree = 0;       // valid iff !identity_holds
  ExactScalar witness_coeff;     // coefficient of the difference at that degree
};

CommutantReport commutant_check(const QmfFilter& f, const LPoly& alpha0);

}  // namespace casclab
