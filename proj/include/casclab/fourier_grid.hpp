#pragma once

#include <complex>
#include <string>
#include <vector>

#include "casclab/filter.hpp"
#include "casclab/grid_fn.hpp"
#include "casclab/interval_set.hpp"
#include "casclab/rational.hpp"

namespace casclab {

// Uniform sample of a function of omega on the window [-pi*2^m, pi*2^m),
// n points, so omega_j = pi*(2j - n)*2^m / n.  The grid spacing is
// 2^(m+1)*pi/n; squared norms are approximated by the Riemann sum
// (1/2pi) * sum |v_j|^2 * spacing = (2^m/n) * sum |v_j|^2.
struct FourierGridFn {
  int m = 0;     // window is [-2^m pi, 2^m pi)
  long n = 0;    // number of sample points
  std::vector<std::complex<double>> v;

  double omega(long j) const {
    return 3.14159265358979323846 * double(2 * j - n) * std::ldexp(1.0, m) / double(n);
  }
  // omega_j / pi as an exact dyadic when n is a power of two: (2j-n)*2^m/n.
  Dyadic omega_over_pi(long j) const;
};

double fourier_norm_sq(const FourierGridFn& f);
double fourier_dist_sq(const FourierGridFn& f, const FourierGridFn& g);

// Initial-vector specification for cascade/diagnostic runs.
struct StartSpec {
  enum class Kind { box, gauss, seq, fbox } kind = Kind::box;
  Rat a, b;                 // box: [a,b) in x-units; fbox: [a,b) in units of pi (frequency)
  double s = 1.0;           // gauss width
  std::vector<Rat> seq;     // seq coefficients, starting at index seq_lo
  long seq_lo = 0;
};

// Accepted forms: "haar", "box:a,b", "gauss:s", "seq:c0,c1,...", "fbox:a,b".
// Numeric tokens are rationals: "3", "-1/4", or finite decimals like "0.25".
StartSpec parse_start(const std::string& text);

// L2-normalized starting vector as a dyadic grid function.  Box endpoints
// must be dyadic; exact normalization needs width 2^t, otherwise this
// throws (use the Fourier-side evaluation instead).  seq starts live at the
// integer grid (level 0), unnormalized.
GridFn start_gridfn(const StartSpec& spec);

// Fourier transform of the step function with value v_k on
// [ (start+k)/2^level, (start+k+1)/2^level ):
//   hat(omega) = ((1 - e^{-i omega d}) / (i omega)) * e^{-i omega start d} * Q(e^{-i omega d}),
// d = 2^-level, Q(z) = sum v_k z^k.  Convention hat(omega) = int f(x) e^{-i omega x} dx.
std::complex<double> gridfn_hat(const GridFnF& g, double omega);
std::complex<double> gridfn_hat(const GridFn& g, double omega);

// Closed-form hat of a StartSpec (box and gauss avoid the lattice sum; fbox
// is an indicator in frequency; seq falls back to gridfn_hat of its level-0 grid).
std::complex<double> start_fourier_eval(const StartSpec& spec, double omega);

// Sample start_fourier_eval on the window [-2^m pi, 2^m pi) with n points.
FourierGridFn make_fourier(const StartSpec& spec, int m, long n);

// One cascade refinement step in the Fourier picture for a band filter:
// (M f)^(omega) = m0(omega/2) * fhat(omega/2) / sqrt(2) ... with our
// normalization (M f)^ = 2^{-1/2} m0(z(omega/2)) fhat(omega/2), and since
// |m0| = sqrt(2) * indicator on the support for a band filter, the step is
// an exact masked re-indexing: out keeps the same window, halves the point
// count, reads fhat at omega/2 and zeroes points outside 2*support.
// Requires n divisible by 4 and n >= 8; throws when the ladder is exhausted.
FourierGridFn fourier_cascade_step(const QmfFilter& f, const FourierGridFn& in);

// Pointwise multiply by the indicator of a periodic set (omega in pi-units).
// Exact membership via dyadic omega/pi; requires n a power of two.
FourierGridFn fourier_mask(const FourierGridFn& f, const PeriodicIntervalSet& s);

// Same, against a plain window set (endpoints in pi-units, no periodization).
FourierGridFn fourier_mask(const FourierGridFn& f, const IntervalSet& s);

// Discrete periodization sum_t |f(omega + 2 pi t)|^2 over the window,
// returned as samples on one period [-pi, pi).  Requires 2^{m+1} | n.
std::vector<double> fourier_p2_sampled(const FourierGridFn& f);

// Sesquilinear periodization sum_t conj(f) g (omega + 2 pi t), same grid rules.
std::vector<std::complex<double>> fourier_p1_sampled(const FourierGridFn& f,
                                                     const FourierGridFn& g);

// Correlation-form coefficients by windowed quadrature:
// p_k = (1/2pi) int conj(fhat) ghat e^{i omega k} d omega, |k| <= kmax.
LPolyF fourier_correlation(const FourierGridFn& f, const FourierGridFn& g, long kmax);

// sum_{n != 0} |hat h(2 pi n)|^2 with a proven tail bound; decides whether
// the lattice obstruction to translates-orthonormality is present.
struct ObstructionReport {
  double partial = 0.0;       // sum over 0 < |n| <= n_max
  double tail = 0.0;          // bound on the rest
  long n_max = 0;
  bool exact_zero = false;    // every lattice term vanishes identically
  std::string verdict;        // "zero_exact" | "obstructed" | "below_significance"
  double first_term = 0.0;    // |hat h(2 pi)|^2, for reporting
};

ObstructionReport obstruction_sum(const StartSpec& spec, long n_max);

// Window-truncated variant: lattice points outside the window are treated as
// zero, which is exact for band-limited data (tail = 0 reported).
ObstructionReport obstruction_sum(const FourierGridFn& f);

// Verifies that the periodization p1(h1,h2)(omega) = sum_s conj(h1^)h2^(omega+2pi s),
// computed by direct lattice summation with an exact closed-form correction for
// the truncated tail, matches the correlation form p2(h1,h2) evaluated at
// z = e^{-i omega} on a sample of omega values.
struct P1CheckReport {
  double max_deviation = 0.0;   // corrected periodization vs p2 evaluation
  double raw_truncation = 0.0;  // worst |correction| actually applied
  long terms = 0;               // lattice terms per sample point (|s| <= terms)
  long samples = 0;
};

P1CheckReport p1_fourier_check(const GridFn& h1, const GridFn& h2, long terms = 128,
                               long samples = 64);

// Band-limited path: periodization over the window vs quadrature correlation
// coefficients re-summed as a Fourier series.
P1CheckReport p1_fourier_check(const FourierGridFn& f, const FourierGridFn& g);

}  // namespace casclab
