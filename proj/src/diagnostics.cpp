#include "casclab/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace casclab {

namespace {

using cdbl = std::complex<double>;

// Windowed Cesaro mean at z = 1: average of the symmetric partial sums
// S_N = sum_{|k| <= N} p_k over N = 0 .. window-1.
double cesaro_at_one(const LPolyF& p, long window) {
  double s = 0.0, acc = 0.0;
  for (long n = 0; n < window; ++n) {
    if (n == 0) {
      s += p.at(0).real();
    } else {
      s += p.at(n).real() + p.at(-n).real();
    }
    acc += s;
  }
  return acc / (double)window;
}

double sum_at_one(const LPolyF& p) {
  double s = 0.0;
  for (auto& c : p.c) s += c.real();
  return s;
}

}  // namespace

DiagnoseReport convergence_diagnose(const QmfFilter& f, const GridFn& phi, const GridFn& F,
                                    int n_max, long cesaro_window) {
  if (f.kind != QmfFilter::Kind::laurent || !f.exact)
    throw std::invalid_argument("convergence_diagnose exact path requires an exact laurent mask");
  DiagnoseReport rep;
  rep.cesaro_window = cesaro_window;

  LPoly one = laurent_one<ExactScalar>();
  bool h_phi = (p2(phi) == one);
  bool h_f = (p2(F) == one);
  rep.hypothesis_ok = h_phi && h_f;
  if (!rep.hypothesis_ok) {
    rep.hypothesis_note = std::string("orthonormal-translates hypothesis fails for") +
                          (h_phi ? "" : " phi") + (h_f ? "" : " F");
    rep.verdict = "hypothesis-violated";
    return rep;
  }

  LPoly p = correlation(phi, F);
  rep.p_series = to_float(p);
  rep.cesaro_value = cesaro_at_one(rep.p_series, cesaro_window);

  // finite series: the Cesaro limit is the plain sum, available exactly
  ExactScalar exact_sum;
  for (auto& c : p.c) exact_sum += c;
  rep.p_at_one = exact_sum.to_double();
  bool value_one = (exact_sum == ExactScalar(1));

  GridFn cur = F;
  for (int n = 0; n <= n_max; ++n) {
    // both sides have unit norm (p2 = 1 and R preserves the mean), so
    // ||phi - M^n F||^2 = 2 - 2 Re<phi, M^n F>
    ExactScalar ip = inner(phi, cur);
    rep.norm_diff_sq.push_back(2.0 - 2.0 * ip.to_double());
    if (n < n_max) cur = cascade_step(f, cur);
  }

  rep.verdict = value_one ? "converges" : "diverges";
  return rep;
}

DiagnoseReport convergence_diagnose_fourier(const QmfFilter& f, const FourierGridFn& phi_hat,
                                            const FourierGridFn& F_hat, int n_max, long kmax,
                                            long cesaro_window) {
  if (f.kind != QmfFilter::Kind::band)
    throw std::invalid_argument("convergence_diagnose_fourier requires a band filter");
  if (phi_hat.m != F_hat.m || phi_hat.n != F_hat.n)
    throw std::invalid_argument("phi and F must share the sampling grid");
  DiagnoseReport rep;
  rep.cesaro_window = cesaro_window;

  const double tol = 1e-8;  // quadrature hypothesis tolerance
  double dev_phi = 0.0, dev_f = 0.0;
  for (double v : fourier_p2_sampled(phi_hat)) dev_phi = std::max(dev_phi, std::abs(v - 1.0));
  for (double v : fourier_p2_sampled(F_hat)) dev_f = std::max(dev_f, std::abs(v - 1.0));
  rep.hypothesis_ok = dev_phi <= tol && dev_f <= tol;
  if (!rep.hypothesis_ok) {
    rep.hypothesis_note = std::string("orthonormal-translates hypothesis fails for") +
                          (dev_phi <= tol ? "" : " phi") + (dev_f <= tol ? "" : " F");
    rep.verdict = "hypothesis-violated";
    return rep;
  }

  rep.p_series = fourier_correlation(phi_hat, F_hat, kmax);
  rep.p_at_one = sum_at_one(rep.p_series);
  rep.cesaro_value = cesaro_at_one(rep.p_series, cesaro_window);

  FourierGridFn phi_cur = phi_hat, f_cur = F_hat;
  for (int n = 0; n <= n_max; ++n) {
    rep.norm_diff_sq.push_back(fourier_dist_sq(phi_cur, f_cur));
    if (n < n_max) {
      phi_cur = fourier_cascade_step(f, phi_cur);  // fixed point stays put
      f_cur = fourier_cascade_step(f, f_cur);
    }
  }

  rep.verdict = std::abs(rep.p_at_one - 1.0) <= tol ? "converges" : "diverges";
  return rep;
}

}  // namespace casclab
