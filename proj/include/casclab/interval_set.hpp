#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "casclab/rational.hpp"

namespace casclab {

// Finite union of half-open intervals [a, b) with endpoints stored as exact
// rationals in units of pi. Canonical form: sorted, pairwise disjoint,
// adjacent intervals merged, empty intervals dropped.
struct IntervalSet {
  std::vector<std::pair<Rat, Rat>> iv;

  bool empty() const { return iv.empty(); }

  Rat measure() const {
    Rat m(0);
    for (auto& [a, b] : iv) m += b - a;
    return m;
  }

  bool contains(const Rat& x) const {
    for (auto& [a, b] : iv) {
      if (x < a) return false;
      if (x < b) return true;
    }
    return false;
  }

  bool contains_dyadic(const Dyadic& d) const {
    for (auto& [a, b] : iv) {
      if (dyadic_cmp(d, a) < 0) return false;
      if (dyadic_cmp(d, b) < 0) return true;
    }
    return false;
  }
};

inline IntervalSet normalize(std::vector<std::pair<Rat, Rat>> raw) {
  std::vector<std::pair<Rat, Rat>> v;
  for (auto& p : raw)
    if (p.first < p.second) v.push_back(p);
  std::sort(v.begin(), v.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  IntervalSet out;
  for (auto& p : v) {
    if (!out.iv.empty() && p.first <= out.iv.back().second)
      out.iv.back().second = std::max(out.iv.back().second, p.second);
    else
      out.iv.push_back(p);
  }
  return out;
}

inline IntervalSet interval(const Rat& a, const Rat& b) { return normalize({{a, b}}); }

inline IntervalSet set_union(const IntervalSet& x, const IntervalSet& y) {
  auto raw = x.iv;
  raw.insert(raw.end(), y.iv.begin(), y.iv.end());
  return normalize(std::move(raw));
}

inline IntervalSet set_intersect(const IntervalSet& x, const IntervalSet& y) {
  std::vector<std::pair<Rat, Rat>> raw;
  size_t i = 0, j = 0;
  while (i < x.iv.size() && j < y.iv.size()) {
    Rat a = std::max(x.iv[i].first, y.iv[j].first);
    Rat b = std::min(x.iv[i].second, y.iv[j].second);
    if (a < b) raw.push_back({a, b});
    if (x.iv[i].second < y.iv[j].second) ++i;
    else ++j;
  }
  return normalize(std::move(raw));
}

inline IntervalSet set_difference(const IntervalSet& x, const IntervalSet& y) {
  std::vector<std::pair<Rat, Rat>> raw;
  for (auto [a, b] : x.iv) {
    Rat cur = a;
    for (auto& [c, d] : y.iv) {
      if (d <= cur) continue;
      if (c >= b) break;
      if (c > cur) raw.push_back({cur, c});
      cur = std::max(cur, d);
      if (cur >= b) break;
    }
    if (cur < b) raw.push_back({cur, b});
  }
  return normalize(std::move(raw));
}

// Image under x -> scale*x + shift. A negative scale reverses each interval;
// the image is returned half-open on the left, which differs from the true
// image only on endpoints (measure zero).
inline IntervalSet set_affine(const IntervalSet& x, const Rat& scale, const Rat& shift) {
  if (scale == 0) throw std::domain_error("degenerate scale in set_affine");
  std::vector<std::pair<Rat, Rat>> raw;
  for (auto& [a, b] : x.iv) {
    Rat u = scale * a + shift, v = scale * b + shift;
    if (u < v) raw.push_back({u, v});
    else raw.push_back({v, u});
  }
  return normalize(std::move(raw));
}

inline IntervalSet complement_within(const IntervalSet& x, const Rat& lo, const Rat& hi) {
  IntervalSet window = interval(lo, hi);
  return set_difference(window, x);
}

inline bool operator==(const IntervalSet& x, const IntervalSet& y) { return x.iv == y.iv; }
inline bool operator!=(const IntervalSet& x, const IntervalSet& y) { return !(x == y); }

// Periodic extension of a base set; membership is invariant under adding the
// period. Base is kept normalized inside [0, period).
struct PeriodicIntervalSet {
  Rat period{2};
  IntervalSet base;

  bool contains(const Rat& x) const { return base.contains(rat_mod(x, period)); }

  // Fast path for dyadic points when the period is 2^t (t >= 0), which covers
  // every set this library builds (2, 4, 8, ... in units of pi).
  bool contains_dyadic(const Dyadic& d) const {
    Int pnum = numerator(period), pden = denominator(period);
    if (pden == 1 && pnum > 0 && (pnum & (pnum - 1)) == 0) {
      int t = 0;
      while ((Int(1) << t) < pnum) ++t;  // period = 2^t
      if (d.e >= 0 && t < 62 && d.e < 62) {
        long long mod = 1LL << t;
        long long r = (d.num % mod + mod) % mod;
        for (int i = 0; i < d.e; ++i) r = (r * 2) % mod;
        return base.contains_dyadic({r, 0});
      }
      if (d.e < 0 && t - d.e < 62) {
        long long mod = 1LL << (t - d.e);
        long long r = (d.num % mod + mod) % mod;
        return base.contains_dyadic({r, d.e});
      }
    }
    return contains(dyadic_rat(d));
  }
};

// Reduce an arbitrary set into the fundamental window [0, period).
inline PeriodicIntervalSet periodic(const IntervalSet& s, const Rat& period) {
  std::vector<std::pair<Rat, Rat>> raw;
  for (auto& [a, b] : s.iv) {
    if (b - a >= period) return {period, interval(Rat(0), period)};
    Rat a0 = rat_mod(a, period);
    Rat b0 = a0 + (b - a);
    if (b0 <= period) {
      raw.push_back({a0, b0});
    } else {
      raw.push_back({a0, period});
      raw.push_back({Rat(0), b0 - period});
    }
  }
  PeriodicIntervalSet p;
  p.period = period;
  p.base = normalize(std::move(raw));
  return p;
}

inline IntervalSet unroll(const PeriodicIntervalSet& s, const Rat& lo, const Rat& hi) {
  std::vector<std::pair<Rat, Rat>> raw;
  Int k0 = rat_floor(lo / s.period) - 1;
  Int k1 = rat_floor(hi / s.period) + 1;
  for (Int k = k0; k <= k1; ++k) {
    Rat off = Rat(k) * s.period;
    for (auto& [a, b] : s.base.iv) {
      Rat u = std::max(Rat(a + off), lo), v = std::min(Rat(b + off), hi);
      if (u < v) raw.push_back({u, v});
    }
  }
  return normalize(std::move(raw));
}

inline PeriodicIntervalSet periodic_affine(const PeriodicIntervalSet& s, const Rat& scale,
                                           const Rat& shift) {
  if (scale <= 0) throw std::domain_error("periodic_affine requires positive scale");
  return periodic(set_affine(s.base, scale, shift), s.period * scale);
}

// Same set re-expressed with period multiplied by an integer factor.
inline PeriodicIntervalSet lift_period(const PeriodicIntervalSet& s, long factor) {
  std::vector<std::pair<Rat, Rat>> raw;
  for (long i = 0; i < factor; ++i) {
    Rat off = Rat(i) * s.period;
    for (auto& [a, b] : s.base.iv) raw.push_back({a + off, b + off});
  }
  PeriodicIntervalSet p;
  p.period = s.period * factor;
  p.base = normalize(std::move(raw));
  return p;
}

inline PeriodicIntervalSet set_intersect_periodic(const PeriodicIntervalSet& x,
                                                  const PeriodicIntervalSet& y) {
  if (x.period != y.period)
    throw std::domain_error("set_intersect_periodic requires equal periods");
  PeriodicIntervalSet p;
  p.period = x.period;
  p.base = set_intersect(x.base, y.base);
  return p;
}

inline PeriodicIntervalSet periodic_complement(const PeriodicIntervalSet& s) {
  PeriodicIntervalSet p;
  p.period = s.period;
  p.base = complement_within(s.base, Rat(0), s.period);
  return p;
}

inline bool operator==(const PeriodicIntervalSet& x, const PeriodicIntervalSet& y) {
  return x.period == y.period && x.base == y.base;
}

}  // namespace casclab
