#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "casclab/exact_scalar.hpp"

namespace casclab {

template <class T>
struct ScalarOps;

template <>
struct ScalarOps<ExactScalar> {
  static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
  static ExactScalar conj(const ExactScalar& x) { return x; }
  static std::complex<double> to_c(const ExactScalar& x) { return {x.to_double(), 0.0}; }
  static ExactScalar zero() { return {}; }
  static ExactScalar one() { return ExactScalar(1); }
  static ExactScalar pow2(int e) { return ExactScalar(pow2_rat(e)); }
  static ExactScalar half_pow2(int k) { return ExactScalar::half_pow2(k); }
};

template <>
struct ScalarOps<std::complex<double>> {
  static bool is_zero(const std::complex<double>& x) {
    return x.real() == 0.0 && x.imag() == 0.0;
  }
  static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
  static std::complex<double> to_c(const std::complex<double>& x) { return x; }
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> pow2(int e) { return {std::ldexp(1.0, e), 0.0}; }
  static std::complex<double> half_pow2(int k) { return {std::pow(2.0, 0.5 * k), 0.0}; }
};

// Finitely supported two-sided coefficient sequence: sum c[n] z^n over
// n = lo .. lo+size-1. Canonical form has nonzero end coefficients; the zero
// polynomial has an empty coefficient vector. Trimming removes exact zeros
// only, so float kinds never lose small values silently.
template <class T>
struct LaurentPoly {
  long lo = 0;
  std::vector<T> c;

  long hi() const { return lo + (long)c.size() - 1; }
  bool is_zero() const { return c.empty(); }

  T at(long n) const {
    if (n < lo || n > hi()) return ScalarOps<T>::zero();
    return c[(size_t)(n - lo)];
  }
};

template <class T>
LaurentPoly<T> trim(LaurentPoly<T> p) {
  size_t b = 0, e = p.c.size();
  while (b < e && ScalarOps<T>::is_zero(p.c[b])) ++b;
  while (e > b && ScalarOps<T>::is_zero(p.c[e - 1])) --e;
  if (b == e) return {};
  p.lo += (long)b;
  p.c = std::vector<T>(p.c.begin() + b, p.c.begin() + e);
  return p;
}

template <class T>
LaurentPoly<T> laurent_from(long lo, std::vector<T> coeffs) {
  LaurentPoly<T> p;
  p.lo = lo;
  p.c = std::move(coeffs);
  return trim(p);
}

template <class T>
LaurentPoly<T> monomial(long n, const T& v) {
  return laurent_from<T>(n, {v});
}

template <class T>
LaurentPoly<T> laurent_one() {
  return monomial<T>(0, ScalarOps<T>::one());
}

template <class T>
LaurentPoly<T> add(const LaurentPoly<T>& p, const LaurentPoly<T>& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  long lo = std::min(p.lo, q.lo), hi = std::max(p.hi(), q.hi());
  LaurentPoly<T> r;
  r.lo = lo;
  r.c.assign((size_t)(hi - lo + 1), ScalarOps<T>::zero());
  for (long n = p.lo; n <= p.hi(); ++n) r.c[(size_t)(n - lo)] += p.at(n);
  for (long n = q.lo; n <= q.hi(); ++n) r.c[(size_t)(n - lo)] += q.at(n);
  return trim(r);
}

template <class T>
LaurentPoly<T> neg(const LaurentPoly<T>& p) {
  LaurentPoly<T> r = p;
  for (auto& x : r.c) x = -x;
  return r;
}

template <class T>
LaurentPoly<T> sub(const LaurentPoly<T>& p, const LaurentPoly<T>& q) {
  return add(p, neg(q));
}

template <class T>
LaurentPoly<T> scale(const LaurentPoly<T>& p, const T& s) {
  if (ScalarOps<T>::is_zero(s)) return {};
  LaurentPoly<T> r = p;
  for (auto& x : r.c) x = x * s;
  return trim(r);
}

template <class T>
LaurentPoly<T> laurent_mul(const LaurentPoly<T>& p, const LaurentPoly<T>& q) {
  if (p.is_zero() || q.is_zero()) return {};
  LaurentPoly<T> r;
  r.lo = p.lo + q.lo;
  r.c.assign(p.c.size() + q.c.size() - 1, ScalarOps<T>::zero());
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (ScalarOps<T>::is_zero(p.c[i])) continue;  // stretched masks are mostly gaps
    for (size_t j = 0; j < q.c.size(); ++j) {
      if (ScalarOps<T>::is_zero(q.c[j])) continue;
      r.c[i + j] += p.c[i] * q.c[j];
    }
  }
  return trim(r);
}

// conj(p)(z) = sum conj(c[n]) z^{-n}
template <class T>
LaurentPoly<T> conj_reflect(const LaurentPoly<T>& p) {
  if (p.is_zero()) return {};
  LaurentPoly<T> r;
  r.lo = -p.hi();
  r.c.resize(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i)
    r.c[r.c.size() - 1 - i] = ScalarOps<T>::conj(p.c[i]);
  return r;
}

// p(z) * conj(p)(z); real symmetric coefficients.
template <class T>
LaurentPoly<T> modulus_squared(const LaurentPoly<T>& p) {
  return laurent_mul(conj_reflect(p), p);
}

// q with q[n] = p[2n]; realizes the half-sum over square roots pointwise.
template <class T>
LaurentPoly<T> downsample_even(const LaurentPoly<T>& p) {
  if (p.is_zero()) return {};
  long lo2 = p.lo / 2, hi2 = p.hi() / 2;
  while (2 * lo2 < p.lo) ++lo2;
  while (2 * hi2 > p.hi()) --hi2;
  if (lo2 > hi2) return {};
  LaurentPoly<T> r;
  r.lo = lo2;
  r.c.resize((size_t)(hi2 - lo2 + 1));
  for (long n = lo2; n <= hi2; ++n) r.c[(size_t)(n - lo2)] = p.at(2 * n);
  return trim(r);
}

// p(z^k), k >= 1
template <class T>
LaurentPoly<T> upsample(const LaurentPoly<T>& p, long k) {
  if (p.is_zero()) return {};
  LaurentPoly<T> r;
  r.lo = p.lo * k;
  r.c.assign((size_t)((p.c.size() - 1) * k + 1), ScalarOps<T>::zero());
  for (size_t i = 0; i < p.c.size(); ++i) r.c[i * (size_t)k] = p.c[i];
  return r;
}

template <class T>
std::complex<double> eval(const LaurentPoly<T>& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  std::complex<double> zp = std::pow(z, (double)p.lo);
  for (size_t i = 0; i < p.c.size(); ++i) {
    acc += ScalarOps<T>::to_c(p.c[i]) * zp;
    zp *= z;
  }
  return acc;
}

template <class T>
T mean(const LaurentPoly<T>& p) {
  return p.at(0);
}

template <class T>
bool operator==(const LaurentPoly<T>& p, const LaurentPoly<T>& q) {
  LaurentPoly<T> a = trim(p), b = trim(q);
  if (a.lo != b.lo || a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!ScalarOps<T>::is_zero(a.c[i] - b.c[i])) return false;
  return true;
}

inline LaurentPoly<std::complex<double>> to_float(const LaurentPoly<ExactScalar>& p) {
  LaurentPoly<std::complex<double>> r;
  r.lo = p.lo;
  r.c.resize(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) r.c[i] = ScalarOps<ExactScalar>::to_c(p.c[i]);
  return trim(r);
}

template <class T>
double max_coeff_dist(const LaurentPoly<T>& p, const LaurentPoly<T>& q) {
  long lo = std::min(p.lo, q.lo);
  long hi = std::max(p.hi(), q.hi());
  if (p.is_zero() && q.is_zero()) return 0.0;
  double m = 0.0;
  for (long n = lo; n <= hi; ++n)
    m = std::max(m, std::abs(ScalarOps<T>::to_c(p.at(n)) - ScalarOps<T>::to_c(q.at(n))));
  return m;
}

using LPoly = LaurentPoly<ExactScalar>;
using LPolyF = LaurentPoly<std::complex<double>>;

}  // namespace casclab
