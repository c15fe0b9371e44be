#pragma once

#include <string>
#include <vector>

#include "casclab/interval_set.hpp"
#include "casclab/laurent.hpp"

namespace casclab {

// Low-pass filter m0, either a Laurent mask or an indicator (band) filter.
// Laurent masks store c_n = sqrt(2) * a_n, so m0(z) = mask(z)/sqrt(2), the
// low-pass axiom reads sum c_n = 2 and the QMF identity becomes
// sum_n c_n conj(c_{n-2k}) = 2 delta_k, a rational identity.
// Band filters are m0 = sqrt(2) * chi_support with support periodic of
// period 2*pi (stored in units of pi).
struct QmfFilter {
  enum class Kind { laurent, band };
  Kind kind = Kind::laurent;
  bool exact = true;  // laurent only: mask coefficients are exact
  std::string name;
  LPoly mask;    // laurent, exact kind
  LPolyF maskf;  // laurent, always populated
  PeriodicIntervalSet support;  // band

  // |m0|^2 as an exact Laurent polynomial (exact laurent kind only).
  LPoly weight() const;
  LPolyF weightf() const;

  std::complex<double> m0_eval(std::complex<double> z) const;  // laurent kinds
  // band kind: m0 at e^{-i*omega} with omega/pi given exactly
  double m0_band(const Dyadic& omega_over_pi) const;
  double m0_band(const Rat& omega_over_pi) const;
};

struct AxiomCheck {
  std::string axiom;
  bool pass = false;
  double residual = 0.0;
  std::string note;
};

struct ValidationReport {
  std::string filter_name;
  bool passed = false;
  std::vector<AxiomCheck> checks;
};

ValidationReport validate(const QmfFilter& f);

// m1(z) = z * conj(m0(-z)). Laurent kinds return the exact/float mask
// (m1-mask)_n = (-1)^{1-n} conj(c_{1-n}); band kinds return the support of
// |m1| (the unit-modulus phase z is dropped, it does not affect |m1|).
QmfFilter high_pass(const QmfFilter& f);

// m0^(n)(z) = prod_{k<n} m0(z^{2^k})
struct FilterProduct {
  int n = 0;
  bool band = false;
  LPoly poly;    // exact laurent
  LPolyF polyf;  // laurent (always)
  PeriodicIntervalSet support;  // band: m0^(n) = 2^{n/2} chi_support
};
FilterProduct filter_product(const QmfFilter& f, int n, long degree_guard = 1L << 21);

// D_n = |m0^(n)|^2; band kind: value 2^n on the stored support.
struct KernelDn {
  int n = 0;
  bool band = false;
  LPoly poly;
  LPolyF polyf;
  PeriodicIntervalSet support;
  ExactScalar mean_exact() const { return poly.at(0); }
  double mean() const;
};
KernelDn kernel_dn(const QmfFilter& f, int n);

// N(m0) = {z : m0(z) = 0}, reported through the principal branch as a subset
// of [-pi, pi) in units of pi.
struct ZeroSet {
  bool measure_zero = true;
  IntervalSet arcs;            // band kind: exact arcs
  std::vector<double> points;  // laurent kind: omega of on-circle roots
};
ZeroSet zero_set(const QmfFilter& f);

// {omega : 2^j * omega in S (mod period)} with the original period restored.
PeriodicIntervalSet sigma_preimage(const PeriodicIntervalSet& s, int j);

// Builders for the filters exercised throughout the suite.
QmfFilter make_haar();
QmfFilter make_stretched_haar();  // m0 = (1 + z^3)/sqrt(2)
QmfFilter make_shannon();         // band [-1/2, 1/2] in units of pi
QmfFilter make_daub4();           // float mask
QmfFilter make_perturbed_haar();  // mask [1, 11/10], fails the QMF identity

// Filter-definition JSON (see configs/): bit-exact rationals, floats only
// when "scalar" is "float".
QmfFilter filter_from_json_text(const std::string& text, const std::string& fallback_name);
QmfFilter load_filter(const std::string& path);

}  // namespace casclab
