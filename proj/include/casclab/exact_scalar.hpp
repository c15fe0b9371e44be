#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "casclab/rational.hpp"

namespace casclab {

// Value a + b*sqrt(2) with rational a, b. Closed under +, -, *, / and carries
// the sqrt(2) factors of filter normalizations exactly. A pure monomial
// q * 2^(e/2) has either b = 0 (even e) or a = 0 (odd e).
struct ExactScalar {
  Rat a{}, b{};

  ExactScalar() = default;
  ExactScalar(int v) : a(v) {}
  ExactScalar(long long v) : a(Int(v)) {}
  explicit ExactScalar(Rat r) : a(std::move(r)) {}
  ExactScalar(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

  static ExactScalar sqrt2() { return {Rat(0), Rat(1)}; }

  // 2^(k/2) for any integer k.
  static ExactScalar half_pow2(int k) {
    if (k % 2 == 0) return ExactScalar(pow2_rat(k / 2));
    return {Rat(0), pow2_rat((k - 1) / 2)};  // k odd, k-1 even: exact
  }

  bool is_zero() const { return a == 0 && b == 0; }

  double to_double() const {
    return rat_double(a) + rat_double(b) * std::sqrt(2.0);
  }

  // (q, e) with value = q * (sqrt 2)^e, e in {0, 1}; empty when both parts
  // are present (a genuine pair, not a monomial).
  std::optional<std::pair<Rat, int>> as_monomial() const {
    if (b == 0) return std::make_pair(a, 0);
    if (a == 0) return std::make_pair(b, 1);
    return std::nullopt;
  }
};

inline ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
  return {x.a + y.a, x.b + y.b};
}
inline ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
  return {x.a - y.a, x.b - y.b};
}
inline ExactScalar operator-(const ExactScalar& x) { return {-x.a, -x.b}; }
inline ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
  return {x.a * y.a + 2 * (x.b * y.b), x.a * y.b + x.b * y.a};
}
inline ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
  // multiply by the conjugate a - b*sqrt2; a^2 - 2b^2 = 0 only for y = 0
  Rat n = y.a * y.a - 2 * (y.b * y.b);
  if (n == 0) throw std::domain_error("division by zero ExactScalar");
  ExactScalar num = x * ExactScalar{y.a, -y.b};
  return {num.a / n, num.b / n};
}
inline ExactScalar& operator+=(ExactScalar& x, const ExactScalar& y) { return x = x + y; }
inline ExactScalar& operator-=(ExactScalar& x, const ExactScalar& y) { return x = x - y; }
inline ExactScalar& operator*=(ExactScalar& x, const ExactScalar& y) { return x = x * y; }
inline bool operator==(const ExactScalar& x, const ExactScalar& y) {
  return x.a == y.a && x.b == y.b;
}
inline bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

}  // namespace casclab
