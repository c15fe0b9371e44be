#pragma once

#include <string>
#include <vector>

#include "casclab/fourier_grid.hpp"
#include "casclab/grid_fn.hpp"

namespace casclab {

// Cascade-convergence diagnosis: does M^n F approach the scaling function phi?
// The criterion evaluates p(phi, F) at z = 1 (its value there must be 1);
// continuity of the series at z = 1 cannot be decided from finitely many
// coefficients, so the verdict always carries the caveat.
struct DiagnoseReport {
  bool hypothesis_ok = false;
  std::string hypothesis_note;  // which of p2(phi) = 1, p2(F) = 1 failed
  LPolyF p_series;              // p(phi, F) coefficients
  double p_at_one = 0.0;        // full sum of the (finite) series
  double cesaro_value = 0.0;    // windowed Cesaro mean of partial sums at z = 1
  long cesaro_window = 1024;
  std::vector<double> norm_diff_sq;  // ||phi - M^n F||^2 = 2 - 2 Re<phi, M^n F>
  std::string verdict;               // converges | diverges | hypothesis-violated
  std::string caveat = "continuity of p at z=1 assumed; not decidable from finitely many coefficients";
};

// Exact path: laurent filter, phi and F piecewise-constant dyadic grids.
// Hypotheses and the z=1 evaluation are exact rational arithmetic.
DiagnoseReport convergence_diagnose(const QmfFilter& f, const GridFn& phi, const GridFn& F,
                                    int n_max = 8, long cesaro_window = 1024);

// Band path: phi given by its Fourier samples (a fixed point of the Fourier
// cascade step, e.g. chi_[-pi,pi) for Shannon); p(phi, F) by windowed
// quadrature; the trend steps both ladders together on the shared grid.
DiagnoseReport convergence_diagnose_fourier(const QmfFilter& f, const FourierGridFn& phi_hat,
                                            const FourierGridFn& F_hat, int n_max = 8,
                                            long kmax = 64, long cesaro_window = 1024);

}  // namespace casclab
