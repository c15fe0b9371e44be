#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "casclab/exact_scalar.hpp"

namespace casclab {

// Deterministic probe source. All distributions are hand-rolled on top of the
// raw mt19937_64 stream so a seed pins the exact byte stream of artifacts.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(uint64_t seed) : g(seed) {}

  uint64_t u64() { return g(); }

  // uniform in [0, 1), 53-bit
  double unit() { return (double)(u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    uint64_t span = (uint64_t)(hi - lo + 1);
    uint64_t lim = UINT64_MAX - UINT64_MAX % span;
    uint64_t x;
    do { x = u64(); } while (x >= lim);
    return lo + (long long)(x % span);
  }

  Rat rational(long long max_abs_num, long long max_den) {
    return rat(range(-max_abs_num, max_abs_num), range(1, max_den));
  }

  std::complex<double> cbox() { return {2.0 * unit() - 1.0, 2.0 * unit() - 1.0}; }
};

}  // namespace casclab
