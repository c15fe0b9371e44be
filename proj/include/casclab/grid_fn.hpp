#pragma once

#include <type_traits>

#include "casclab/filter.hpp"
#include "casclab/laurent.hpp"

namespace casclab {

// Piecewise-constant function on the dyadic grid of level J: value v[k] on
// the cell [(start+k) 2^-J, (start+k+1) 2^-J). Canonical form trims zero end
// cells. All operations below are exact for exact scalars: cells map to
// cells, inner products are finite sums.
template <class T>
struct GridFnT {
  int level = 0;
  long start = 0;
  std::vector<T> v;

  long len() const { return (long)v.size(); }
  bool is_zero() const { return v.empty(); }
  T at(long k) const {  // absolute cell index at this level
    if (k < start || k >= start + len()) return ScalarOps<T>::zero();
    return v[(size_t)(k - start)];
  }
};

using GridFn = GridFnT<ExactScalar>;
using GridFnF = GridFnT<std::complex<double>>;

// Coefficient sequences live on the same Laurent container.
template <class T>
using CoefSeqT = LaurentPoly<T>;
using CoefSeq = LPoly;
using CoefSeqF = LPolyF;

template <class T>
GridFnT<T> trim_grid(GridFnT<T> h) {
  size_t b = 0, e = h.v.size();
  while (b < e && ScalarOps<T>::is_zero(h.v[b])) ++b;
  while (e > b && ScalarOps<T>::is_zero(h.v[e - 1])) --e;
  if (b == e) return {h.level, 0, {}};
  h.start += (long)b;
  h.v = std::vector<T>(h.v.begin() + b, h.v.begin() + e);
  return h;
}

// Same function one level finer: each cell splits in two.
template <class T>
GridFnT<T> refine(const GridFnT<T>& h) {
  GridFnT<T> r;
  r.level = h.level + 1;
  r.start = 2 * h.start;
  r.v.resize(h.v.size() * 2);
  for (size_t i = 0; i < h.v.size(); ++i) r.v[2 * i] = r.v[2 * i + 1] = h.v[i];
  return r;
}

template <class T>
GridFnT<T> refine_to(GridFnT<T> h, int level) {
  if (level < h.level) throw std::invalid_argument("refine_to cannot coarsen");
  while (h.level < level) h = refine(h);
  return h;
}

// h(x - n), integer n
template <class T>
GridFnT<T> shift_grid(const GridFnT<T>& h, long n) {
  GridFnT<T> r = h;
  r.start += n * (1L << h.level);
  return r;
}

// (U h)(x) = 2^{-1/2} h(x/2): support doubles, same level.
template <class T>
GridFnT<T> u_op(const GridFnT<T>& h) {
  GridFnT<T> r;
  r.level = h.level;
  r.start = 2 * h.start;
  r.v.resize(h.v.size() * 2);
  T s = ScalarOps<T>::half_pow2(-1);
  for (size_t i = 0; i < h.v.size(); ++i) r.v[2 * i] = r.v[2 * i + 1] = h.v[i] * s;
  return r;
}

template <class T>
GridFnT<T> grid_add(const GridFnT<T>& a, const GridFnT<T>& b) {
  int J = std::max(a.level, b.level);
  GridFnT<T> x = refine_to(a, J), y = refine_to(b, J);
  if (x.is_zero()) return trim_grid(y);
  if (y.is_zero()) return trim_grid(x);
  long lo = std::min(x.start, y.start);
  long hi = std::max(x.start + x.len(), y.start + y.len());
  GridFnT<T> r;
  r.level = J;
  r.start = lo;
  r.v.assign((size_t)(hi - lo), ScalarOps<T>::zero());
  for (long k = 0; k < x.len(); ++k) r.v[(size_t)(x.start + k - lo)] += x.v[(size_t)k];
  for (long k = 0; k < y.len(); ++k) r.v[(size_t)(y.start + k - lo)] += y.v[(size_t)k];
  return trim_grid(r);
}

template <class T>
GridFnT<T> grid_scale(const GridFnT<T>& h, const T& s) {
  if (ScalarOps<T>::is_zero(s)) return {h.level, 0, {}};
  GridFnT<T> r = h;
  for (auto& x : r.v) x = x * s;
  return trim_grid(r);
}

template <class T>
GridFnT<T> grid_sub(const GridFnT<T>& a, const GridFnT<T>& b) {
  return grid_add(a, grid_scale(b, -ScalarOps<T>::one()));
}

// <a, b> = integral of conj(a) b = 2^-J sum conj(a_k) b_k at a common level
template <class T>
T inner(const GridFnT<T>& a, const GridFnT<T>& b) {
  int J = std::max(a.level, b.level);
  GridFnT<T> x = refine_to(a, J), y = refine_to(b, J);
  T s = ScalarOps<T>::zero();
  long lo = std::max(x.start, y.start);
  long hi = std::min(x.start + x.len(), y.start + y.len());
  for (long k = lo; k < hi; ++k) s += ScalarOps<T>::conj(x.at(k)) * y.at(k);
  return s * ScalarOps<T>::pow2(-J);
}

template <class T>
T norm_sq(const GridFnT<T>& h) {
  return inner(h, h);
}

template <class T>
bool operator==(const GridFnT<T>& a, const GridFnT<T>& b) {
  int J = std::max(a.level, b.level);
  GridFnT<T> x = trim_grid(refine_to(a, J)), y = trim_grid(refine_to(b, J));
  if (x.start != y.start || x.v.size() != y.v.size()) return false;
  for (size_t i = 0; i < x.v.size(); ++i)
    if (!ScalarOps<T>::is_zero(x.v[i] - y.v[i])) return false;
  return true;
}

namespace detail {
template <class T>
const LaurentPoly<T>& mask_of(const QmfFilter& f) {
  if (f.kind != QmfFilter::Kind::laurent)
    throw std::invalid_argument("grid operations require a Laurent filter");
  if constexpr (std::is_same_v<T, ExactScalar>) {
    if (!f.exact)
      throw std::invalid_argument("exact grid operation on a float filter");
    return f.mask;
  } else {
    return f.maskf;
  }
}
}  // namespace detail

// (M h)(x) = sum_n c_n h(2x - n), c = mask = sqrt(2) a. A level-J cell lands
// on the level-(J+1) cells offset by n 2^J, so the output is exact.
template <class T>
GridFnT<T> cascade_step(const QmfFilter& f, const GridFnT<T>& h) {
  const LaurentPoly<T>& mask = detail::mask_of<T>(f);
  if (h.is_zero() || mask.is_zero()) return {h.level + 1, 0, {}};
  long P = 1L << h.level;
  GridFnT<T> r;
  r.level = h.level + 1;
  r.start = h.start + mask.lo * P;
  r.v.assign(h.v.size() + (mask.c.size() - 1) * (size_t)P, ScalarOps<T>::zero());
  for (size_t ni = 0; ni < mask.c.size(); ++ni)
    for (size_t k = 0; k < h.v.size(); ++k)
      r.v[k + ni * (size_t)P] += mask.c[ni] * h.v[k];
  return trim_grid(r);
}

inline long floor_div_long(long a, long b) {
  long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// p(h1, h2)(z) = sum_k z^k <h1(. - k), h2>, the shift-correlation series.
template <class T>
LaurentPoly<T> correlation(const GridFnT<T>& h1, const GridFnT<T>& h2) {
  if (h1.is_zero() || h2.is_zero()) return {};
  int J = std::max(h1.level, h2.level);
  GridFnT<T> x = refine_to(h1, J), y = refine_to(h2, J);
  long P = 1L << J;
  // supports overlap iff x.start + kP < y.end and y.start < x.end + kP
  long klo = -floor_div_long(x.start + x.len() - y.start - 1, P);
  long khi = floor_div_long(y.start + y.len() - x.start - 1, P);
  if (klo > khi) return {};
  LaurentPoly<T> p;
  p.lo = klo;
  p.c.assign((size_t)(khi - klo + 1), ScalarOps<T>::zero());
  for (long k = klo; k <= khi; ++k) p.c[(size_t)(k - klo)] = inner(shift_grid(x, k), y);
  return trim(p);
}

template <class T>
LaurentPoly<T> p2(const GridFnT<T>& h) {
  return correlation(h, h);
}

// pi(alpha) h = sum_n alpha_n h(. - n), the translation representation.
template <class T>
GridFnT<T> pi_alpha(const LaurentPoly<T>& alpha, const GridFnT<T>& h) {
  GridFnT<T> r{h.level, 0, {}};
  for (long n = alpha.lo; n <= alpha.hi(); ++n) {
    if (ScalarOps<T>::is_zero(alpha.at(n))) continue;
    r = grid_add(r, grid_scale(shift_grid(h, n), alpha.at(n)));
  }
  return r;
}

// ---- subdivision operators on coefficient sequences ----

// (S xi)_n = sum_k a_{n-2k} xi_k with a = mask / sqrt(2)
template <class T>
CoefSeqT<T> subdivision_step(const QmfFilter& f, const CoefSeqT<T>& xi) {
  LaurentPoly<T> a = scale(detail::mask_of<T>(f), ScalarOps<T>::half_pow2(-1));
  return laurent_mul(a, upsample(xi, 2));
}

// (S* xi)_k = sum_n conj(a_{n-2k}) xi_n
template <class T>
CoefSeqT<T> subdivision_adjoint(const QmfFilter& f, const CoefSeqT<T>& xi) {
  LaurentPoly<T> a = scale(detail::mask_of<T>(f), ScalarOps<T>::half_pow2(-1));
  return downsample_even(laurent_mul(conj_reflect(a), xi));
}

// ell^2 pairing <xi, eta> = sum conj(xi_n) eta_n
template <class T>
T seq_inner(const CoefSeqT<T>& xi, const CoefSeqT<T>& eta) {
  T s = ScalarOps<T>::zero();
  long lo = std::max(xi.lo, eta.lo), hi = std::min(xi.hi(), eta.hi());
  for (long n = lo; n <= hi; ++n) s += ScalarOps<T>::conj(xi.at(n)) * eta.at(n);
  return s;
}

// (S^k xi)_j read as the level-k grid function with value (S^k xi)_j on
// [j 2^-k, (j+1) 2^-k).
template <class T>
GridFnT<T> dyadic_approximant(const QmfFilter& f, const CoefSeqT<T>& xi, int k) {
  if (k < 0) throw std::invalid_argument("dyadic_approximant depth must be >= 0");
  if (k > 24) throw std::length_error("dyadic_approximant depth exceeds memory bound");
  CoefSeqT<T> s = xi;
  for (int t = 0; t < k; ++t) s = subdivision_step(f, s);
  GridFnT<T> g;
  g.level = k;
  g.start = s.lo;
  g.v = s.c;
  return trim_grid(g);
}

// ---- Cuntz pair report ----

struct CuntzReport {
  double max_residual = 0.0;  // worst coefficient deviation over all relations
  bool exact_pass = true;     // exact kind only: every relation exactly zero
};

// Checks S_i* S_j = delta_ij id and S0 S0* + S1 S1* = id on probe impulses
// delta_lo .. delta_hi.
template <class T>
CuntzReport cuntz_pair(const QmfFilter& f, long probe_lo = -4, long probe_hi = 4) {
  QmfFilter g = high_pass(f);
  CuntzReport rep;
  auto bump = [&](const CoefSeqT<T>& got, const CoefSeqT<T>& want) {
    rep.max_residual = std::max(rep.max_residual, max_coeff_dist(got, want));
    if (!(got == want)) rep.exact_pass = false;
  };
  for (long j = probe_lo; j <= probe_hi; ++j) {
    CoefSeqT<T> d = monomial<T>(j, ScalarOps<T>::one());
    CoefSeqT<T> s0 = subdivision_step(f, d), s1 = subdivision_step(g, d);
    bump(subdivision_adjoint(f, s0), d);
    bump(subdivision_adjoint(g, s1), d);
    bump(subdivision_adjoint(f, s1), {});
    bump(subdivision_adjoint(g, s0), {});
    CoefSeqT<T> back = add(subdivision_step(f, subdivision_adjoint(f, d)),
                           subdivision_step(g, subdivision_adjoint(g, d)));
    bump(back, d);
  }
  return rep;
}

// ---- intertwiner checks for C_F(alpha) = pi(alpha) F ----

struct IntertwinerReport {
  double max_s0_residual = 0.0;    // C_F(S0 alpha) vs U(C_F alpha)
  double max_gram_residual = 0.0;  // <C_F a, C_F b> vs (conj_reflect(a) b p2(F))_0
  bool exact_pass = true;
};

template <class T>
IntertwinerReport intertwiner_check(const QmfFilter& f, const GridFnT<T>& F,
                                    const std::vector<LaurentPoly<T>>& probes) {
  IntertwinerReport rep;
  for (auto& alpha : probes) {
    GridFnT<T> lhs = pi_alpha(subdivision_step(f, alpha), F);
    GridFnT<T> rhs = u_op(pi_alpha(alpha, F));
    GridFnT<T> diff = grid_sub(lhs, rhs);
    double r = std::sqrt(std::abs(ScalarOps<T>::to_c(norm_sq(diff))));
    rep.max_s0_residual = std::max(rep.max_s0_residual, r);
    if (!diff.is_zero()) rep.exact_pass = false;
  }
  LaurentPoly<T> pF = p2(F);
  for (auto& alpha : probes)
    for (auto& beta : probes) {
      T lhs = inner(pi_alpha(alpha, F), pi_alpha(beta, F));
      T rhs = laurent_mul(laurent_mul(conj_reflect(alpha), beta), pF).at(0);
      double r = std::abs(ScalarOps<T>::to_c(lhs - rhs));
      rep.max_gram_residual = std::max(rep.max_gram_residual, r);
      if (!ScalarOps<T>::is_zero(lhs - rhs)) rep.exact_pass = false;
    }
  return rep;
}

}  // namespace casclab
