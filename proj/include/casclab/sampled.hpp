#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "casclab/laurent.hpp"

namespace casclab {

// Complex values at the N-th roots z_j = e^{-2*pi*i*j/N}, N a power of two.
struct SampledCircleFn {
  std::vector<std::complex<double>> v;
  long n() const { return (long)v.size(); }
  std::complex<double> z(long j) const {
    return std::polar(1.0, -2.0 * std::numbers::pi * (double)j / (double)n());
  }
};

template <class T>
SampledCircleFn sample(const LaurentPoly<T>& p, long N) {
  SampledCircleFn s;
  s.v.assign((size_t)N, {0.0, 0.0});
  for (long j = 0; j < N; ++j) s.v[(size_t)j] = eval(p, s.z(j));
  return s;
}

// Recovers coefficients on the window [lo, lo+N); exact for degree span < N
// up to rounding. Direct O(N^2) transform, adequate at desk scale.
inline LPolyF interpolate(const SampledCircleFn& s, long lo) {
  long N = s.n();
  LPolyF p;
  p.lo = lo;
  p.c.assign((size_t)N, {0.0, 0.0});
  for (long t = 0; t < N; ++t) {
    long deg = lo + t;
    std::complex<double> acc = 0.0;
    for (long j = 0; j < N; ++j) {
      long ph = ((j * deg) % N + N) % N;
      acc += s.v[(size_t)j] * std::polar(1.0, 2.0 * std::numbers::pi * (double)ph / (double)N);
    }
    p.c[(size_t)t] = acc / (double)N;
  }
  return p;
}

inline double max_sample_dist(const SampledCircleFn& a, const SampledCircleFn& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

}  // namespace casclab
