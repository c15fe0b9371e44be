#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace casclab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(Int(num), Int(den));
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2_rat(int e) {
  if (e >= 0) return Rat(Int(1) << e);
  return Rat(Int(1), Int(1) << (-e));
}

// floor(a/b) for b > 0, correct for negative a.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Int rat_floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }

// x reduced into [0, p), p > 0.
inline Rat rat_mod(const Rat& x, const Rat& p) {
  Rat q = x / p;
  return x - Rat(rat_floor(q)) * p;
}

inline double rat_double(const Rat& x) { return x.convert_to<double>(); }

inline long long int_ll(const Int& x) {
  if (x > Int(std::numeric_limits<long long>::max()) ||
      x < Int(std::numeric_limits<long long>::min()))
    throw std::overflow_error("integer exceeds int64 in serialization");
  return x.convert_to<long long>();
}

inline std::string rat_str(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

// Exact value num * 2^e, used for points of dyadic frequency grids (in units
// of pi). Keeps band-membership tests away from floating-point rounding.
struct Dyadic {
  long long num = 0;
  int e = 0;
};

// sign(d - q) computed exactly; |num| and denominators must stay well under
// 2^62 (true for every grid/set in this codebase).
inline int dyadic_cmp(const Dyadic& d, const Rat& q) {
  long long qn = int_ll(numerator(q));
  long long qd = int_ll(denominator(q));
  __int128 lhs, rhs;
  if (d.e >= 0) {
    lhs = (__int128)d.num * ((__int128)1 << d.e) * qd;
    rhs = (__int128)qn;
  } else {
    lhs = (__int128)d.num * qd;
    rhs = (__int128)qn * ((__int128)1 << (-d.e));
  }
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

inline Rat dyadic_rat(const Dyadic& d) { return Rat(Int(d.num)) * pow2_rat(d.e); }

}  // namespace casclab
