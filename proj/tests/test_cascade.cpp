#include <doctest.h>

#include <cmath>
#include <complex>

#include "casclab/diagnostics.hpp"
#include "casclab/filter.hpp"
#include "casclab/fourier_grid.hpp"
#include "casclab/grid_fn.hpp"
#include "casclab/rng.hpp"
#include "casclab/ruelle.hpp"

using namespace casclab;

namespace {

LPoly lp(long lo, std::vector<long long> nums, long long den = 1) {
  std::vector<ExactScalar> c;
  c.reserve(nums.size());
  for (long long n : nums) c.push_back(ExactScalar(rat(n, den)));
  return laurent_from(lo, std::move(c));
}

GridFn random_grid(Rng& rng) {
  GridFn h;
  h.level = (int)rng.range(0, 2);
  h.start = rng.range(-4, 4);
  h.v.resize((size_t)rng.range(1, 6));
  for (auto& x : h.v) x = ExactScalar(rng.rational(6, 6));
  return trim_grid(h);
}

LPoly random_seq(Rng& rng) {
  LPoly p;
  p.lo = -rng.range(0, 3);
  p.c.resize((size_t)rng.range(1, 6));
  for (auto& x : p.c) x = ExactScalar(rng.rational(6, 6));
  return trim(p);
}

const GridFn kChi{0, 0, {ExactScalar(1)}};  // indicator of [0, 1)

}  // namespace

TEST_CASE("cascade map fixes the model scaling functions exactly") {
  CHECK(cascade_step(make_haar(), kChi) == kChi);
  GridFn phi3{0, 0, {ExactScalar(rat(1, 3)), ExactScalar(rat(1, 3)), ExactScalar(rat(1, 3))}};
  CHECK(cascade_step(make_stretched_haar(), phi3) == phi3);
  CHECK(cascade_step(make_haar(), GridFn{0, 0, {}}).is_zero());
  // dilation halves translations: M (h(. - 2)) = (M h)(. - 1)
  GridFn away = cascade_step(make_haar(), shift_grid(kChi, 2));
  CHECK(away == shift_grid(kChi, 1));
}

TEST_CASE("norm bookkeeping routes through the transfer operator") {
  Rng rng(0xCA5C);
  for (QmfFilter f : {make_haar(), make_stretched_haar()}) {
    for (int t = 0; t < 10; ++t) {
      GridFn h = random_grid(rng);
      CHECK(norm_sq(cascade_step(f, h)) == ruelle_apply(f, p2(h)).at(0));
      // M*M = pi(|m0|^2) pairs cascade steps against the weight action
      GridFn g = random_grid(rng);
      CHECK(inner(cascade_step(f, h), cascade_step(f, g)) ==
            inner(h, pi_alpha(f.weight(), g)));
    }
  }
}

TEST_CASE("subdivision adjoint pair restores sequences") {
  QmfFilter haar = make_haar();
  ExactScalar h = ExactScalar::half_pow2(-1);
  CHECK(subdivision_step(haar, laurent_one<ExactScalar>()) ==
        laurent_from(0, std::vector<ExactScalar>{h, h}));

  Rng rng(0x5D1);
  for (QmfFilter f : {make_haar(), make_stretched_haar()}) {
    for (int t = 0; t < 20; ++t) {
      LPoly x = random_seq(rng), y = random_seq(rng);
      CHECK(seq_inner(subdivision_step(f, x), y) ==
            seq_inner(x, subdivision_adjoint(f, y)));
      CHECK(subdivision_adjoint(f, subdivision_step(f, x)) == x);  // S* S = id
    }
  }
}

TEST_CASE("dyadic approximants are cascade iterates of the unit box") {
  QmfFilter haar = make_haar(), s3 = make_stretched_haar();
  LPoly delta = laurent_one<ExactScalar>();
  GridFn a0 = dyadic_approximant(haar, delta, 0);
  CHECK(a0 == kChi);
  for (QmfFilter f : {haar, s3}) {
    GridFn m = kChi;
    for (int k = 1; k <= 5; ++k) {
      m = cascade_step(f, m);
      CHECK(dyadic_approximant(f, delta, k) ==
            grid_scale(m, ExactScalar::half_pow2(-k)));
    }
  }
  CHECK_THROWS_AS(dyadic_approximant(haar, delta, -1), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_approximant(haar, delta, 25), std::length_error);
}

TEST_CASE("low and high pass subdivisions form a cuntz pair") {
  CHECK(cuntz_pair<ExactScalar>(make_haar()).exact_pass);
  CHECK(cuntz_pair<ExactScalar>(make_stretched_haar()).exact_pass);
  CHECK(cuntz_pair<std::complex<double>>(make_daub4()).max_residual <= 1e-12);
}

TEST_CASE("shift correlations of the fixed points match the invariant vectors") {
  CHECK(p2(kChi) == laurent_one<ExactScalar>());
  GridFn phi3{0, 0, {ExactScalar(rat(1, 3)), ExactScalar(rat(1, 3)), ExactScalar(rat(1, 3))}};
  CHECK(p2(phi3) == lp(-2, {1, 2, 3, 2, 1}, 9));

  Rng rng(0xC0);
  for (int t = 0; t < 5; ++t) {
    GridFn h = random_grid(rng);
    CHECK(p2(h).at(0) == norm_sq(h));
    CHECK(correlation(shift_grid(h, 1), h) ==
          laurent_mul(monomial<ExactScalar>(-1, ExactScalar(1)), p2(h)));
    CHECK(conj_reflect(p2(h)) == p2(h));  // self-correlations are hermitian
  }
}

TEST_CASE("translation intertwiner commutes with subdivision on the haar model") {
  std::vector<LPoly> probes;
  for (long n = -2; n <= 2; ++n) probes.push_back(monomial<ExactScalar>(n, ExactScalar(1)));
  IntertwinerReport r = intertwiner_check(make_haar(), kChi, probes);
  CHECK(r.exact_pass);
  CHECK(r.max_s0_residual == 0.0);
  CHECK(r.max_gram_residual == 0.0);
}

TEST_CASE("windowed periodization with tail correction reproduces correlations") {
  CHECK(p1_fourier_check(kChi, kChi).max_deviation <= 1e-8);
  GridFn a{1, -2, {ExactScalar(rat(1, 2)), ExactScalar(rat(-1, 3)), ExactScalar(1)}};
  GridFn b{0, 0, {ExactScalar(rat(2, 5)), ExactScalar(rat(1, 7))}};
  CHECK(p1_fourier_check(a, b).max_deviation <= 1e-8);
}

TEST_CASE("frequency-side cascade fixes the band-limited box") {
  QmfFilter sh = make_shannon();
  FourierGridFn h = make_fourier(parse_start("fbox:-1,1"), 3, 256);
  FourierGridFn stepped = fourier_cascade_step(sh, h);
  CHECK(stepped.n == 128);
  CHECK(fourier_dist_sq(stepped, make_fourier(parse_start("fbox:-1,1"), 3, 128)) <= 1e-28);

  FourierGridFn zero{3, 256, std::vector<std::complex<double>>(256, 0.0)};
  CHECK(fourier_norm_sq(fourier_cascade_step(sh, zero)) == 0.0);
  CHECK_THROWS_AS(fourier_cascade_step(sh, make_fourier(parse_start("fbox:-1,1"), 3, 4)),
                  std::invalid_argument);
}

TEST_CASE("starts parse to normalized grid functions") {
  GridFn g = start_gridfn(parse_start("box:1/4,3/4"));
  CHECK(g.level == 2);
  CHECK(g.start == 1);
  CHECK(g.len() == 2);
  CHECK(norm_sq(g) == ExactScalar(1));
  CHECK(start_gridfn(parse_start("haar")) == kChi);

  GridFn s = start_gridfn(parse_start("seq:1,-1"));
  CHECK(s.level == 0);
  CHECK(s.at(0) == ExactScalar(1));
  CHECK(s.at(1) == ExactScalar(-1));

  CHECK_THROWS_AS(start_gridfn(parse_start("box:0,3")), std::invalid_argument);
  CHECK_THROWS_AS(start_gridfn(parse_start("gauss:1")), std::invalid_argument);
  CHECK_THROWS(parse_start("box:1"));
  CHECK_THROWS(parse_start("wavelet:0,1"));

  // closed-form transform agrees with the grid-side evaluation
  for (double w : {0.0, 0.1, 1.7, -2.3, 14.9}) {
    std::complex<double> a = start_fourier_eval(parse_start("box:0,1"), w);
    std::complex<double> b = gridfn_hat(kChi, w);
    CHECK(std::abs(a - b) <= 1e-12);
  }
}

TEST_CASE("lattice obstruction sums match independent references") {
  // references: independent high-precision summation of the lattice series
  ObstructionReport box75 = obstruction_sum(parse_start("box:0,7/5"), 1000000);
  CHECK(box75.verdict == "obstructed");
  CHECK(!box75.exact_zero);
  CHECK(box75.partial <= 6.0 / 35.0 + 1e-15);
  CHECK(6.0 / 35.0 - box75.partial <= box75.tail + 1e-15);

  ObstructionReport g01 = obstruction_sum(parse_start("gauss:0.1"), 100);
  CHECK(g01.verdict == "obstructed");
  CHECK(std::abs(g01.partial - 0.6455092298466727) <= 1e-12);

  ObstructionReport g1 = obstruction_sum(parse_start("gauss:1"), 100);
  CHECK(g1.verdict == "below_significance");
  CHECK(std::abs(g1.partial - 5.074298458457957e-17) <= 1e-22);

  ObstructionReport unit = obstruction_sum(parse_start("box:0,1"), 100);
  CHECK(unit.verdict == "zero_exact");
  CHECK(unit.exact_zero);
  CHECK(unit.partial == 0.0);
}

TEST_CASE("convergence diagnosis separates the three verdicts") {
  QmfFilter haar = make_haar();
  DiagnoseReport same = convergence_diagnose(haar, kChi, kChi, 6);
  CHECK(same.hypothesis_ok);
  CHECK(same.verdict == "converges");
  CHECK(same.p_at_one == 1.0);
  for (double d : same.norm_diff_sq) CHECK(d == 0.0);

  DiagnoseReport shifted = convergence_diagnose(haar, kChi, shift_grid(kChi, 1), 8);
  CHECK(shifted.verdict == "converges");
  CHECK(shifted.p_series == to_float(lp(1, {1})));
  REQUIRE(shifted.norm_diff_sq.size() == 9);
  CHECK(shifted.norm_diff_sq[0] == 2.0);
  for (int n = 1; n <= 8; ++n)
    CHECK(shifted.norm_diff_sq[(size_t)n] ==
          doctest::Approx(std::ldexp(1.0, 1 - n)).epsilon(1e-12));

  DiagnoseReport wide = convergence_diagnose(haar, kChi, start_gridfn(parse_start("box:0,4")), 4);
  CHECK(!wide.hypothesis_ok);
  CHECK(wide.verdict == "hypothesis-violated");

  CHECK_THROWS_AS(convergence_diagnose(make_daub4(), kChi, kChi, 2), std::invalid_argument);
}

TEST_CASE("frequency-side diagnosis flags disjoint limits") {
  QmfFilter sh = make_shannon();
  FourierGridFn phi = make_fourier(parse_start("fbox:-1,1"), 2, 512);
  DiagnoseReport ok = convergence_diagnose_fourier(sh, phi, phi, 4);
  CHECK(ok.verdict == "converges");

  FourierGridFn far = make_fourier(parse_start("fbox:1,3"), 2, 512);
  DiagnoseReport bad = convergence_diagnose_fourier(sh, phi, far, 4);
  CHECK(bad.verdict == "diverges");
  CHECK(std::abs(bad.p_at_one) <= 1e-8);
  CHECK(bad.norm_diff_sq.back() >= 1.9);  // iterates leave the window entirely
}
