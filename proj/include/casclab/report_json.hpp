#pragma once

#include <complex>
#include <string>

#include "casclab/filter.hpp"
#include "casclab/fourier_grid.hpp"
#include "casclab/io.hpp"
#include "casclab/laurent.hpp"

namespace casclab {

inline std::string exact_str(const ExactScalar& x) {
  if (x.b == 0) return rat_str(x.a);
  std::string root = rat_str(x.b) + "*sqrt2";
  if (x.a == 0) return root;
  return rat_str(x.a) + (x.b > 0 ? "+" : "") + root;
}

inline ordered_json cplx_json(const std::complex<double>& z) {
  return ordered_json::array({fmt_g17(z.real()), fmt_g17(z.imag())});
}

inline ordered_json lpoly_json(const LPoly& p) {
  ordered_json j;
  j["lo"] = p.lo;
  ordered_json c = ordered_json::array();
  for (auto& x : p.c) c.push_back(exact_str(x));
  j["coeffs"] = c;
  return j;
}

inline ordered_json lpoly_json(const LPolyF& p) {
  ordered_json j;
  j["lo"] = p.lo;
  ordered_json c = ordered_json::array();
  for (auto& x : p.c) c.push_back(cplx_json(x));
  j["coeffs"] = c;
  return j;
}

inline ordered_json validation_json(const ValidationReport& r) {
  ordered_json j;
  j["filter"] = r.filter_name;
  j["passed"] = r.passed;
  ordered_json checks = ordered_json::array();
  for (auto& c : r.checks) {
    ordered_json cj;
    cj["axiom"] = c.axiom;
    cj["pass"] = c.pass;
    cj["residual"] = fmt_g17(c.residual);
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

inline ordered_json obstruction_json(const std::string& start, const ObstructionReport& r) {
  ordered_json j;
  j["start"] = start;
  j["n_max"] = r.n_max;
  j["partial"] = fmt_g17(r.partial);
  j["tail_bound"] = fmt_g17(r.tail);
  j["first_term"] = fmt_g17(r.first_term);
  j["exact_zero"] = r.exact_zero;
  j["verdict"] = r.verdict;
  return j;
}

}  // namespace casclab
