#include <doctest.h>

#include <cmath>
#include <complex>

#include "casclab/filter.hpp"
#include "casclab/fourier_grid.hpp"
#include "casclab/rng.hpp"
#include "casclab/wold.hpp"

using namespace casclab;

namespace {

LPoly lp(long lo, std::vector<long long> nums, long long den = 1) {
  std::vector<ExactScalar> c;
  c.reserve(nums.size());
  for (long long n : nums) c.push_back(ExactScalar(rat(n, den)));
  return laurent_from(lo, std::move(c));
}

}  // namespace

TEST_CASE("kernel support doubles the mask zero set") {
  CHECK(kernel_set(make_shannon()) == periodic(interval(1, 3), Rat(4)));
  PeriodicIntervalSet kh = kernel_set(make_haar());
  CHECK(kh.base.empty());  // measure-zero mask zeros leave no kernel band
  CHECK(kh.period == Rat(4));
}

TEST_CASE("shannon ladder sets follow the dyadic pattern") {
  WoldSets w = wold_sets(make_shannon(), 4, Rat(32));
  CHECK(w.note.empty());
  CHECK(w.E == w.F[0]);
  REQUIRE(w.F.size() == 5);
  for (int k = 1; k <= 5; ++k)
    CHECK(w.F[(size_t)(k - 1)] ==
          periodic(interval(Rat(1), Rat((1L << (k + 1)) - 1)), Rat(1L << (k + 1))));
  REQUIRE(w.Ek.size() == 4);
  // E_1 = F_2 \ F_1 = [3 pi, 5 pi) + 8 pi Z, forced by the F_k above
  CHECK(w.Ek[0] == periodic(interval(3, 5), Rat(8)));
  for (int k = 1; k <= 4; ++k)
    CHECK(w.Ek[(size_t)(k - 1)] ==
          periodic(interval(Rat((1L << (k + 1)) - 1), Rat((1L << (k + 1)) + 1)),
                   Rat(1L << (k + 2))));
  CHECK(w.E_inf_window == interval(-1, 1));

  // the layers exhaust the ladder monotonically
  for (int k = 0; k + 1 < (int)w.F.size(); ++k) {
    IntervalSet a = unroll(w.F[(size_t)k], Rat(-32), Rat(32));
    IntervalSet b = unroll(w.F[(size_t)(k + 1)], Rat(-32), Rat(32));
    CHECK(set_difference(a, b).empty());
  }
}

TEST_CASE("shannon layers tile the window exactly") {
  const Rat W(64);
  WoldSets w = wold_sets(make_shannon(), 5, W);
  std::vector<IntervalSet> parts{unroll(w.E, -W, W)};
  for (auto& s : w.Ek) parts.push_back(unroll(s, -W, W));
  parts.push_back(w.E_inf_window);

  Rat covered(0);
  for (size_t a = 0; a < parts.size(); ++a) {
    covered += parts[a].measure();
    for (size_t b = a + 1; b < parts.size(); ++b)
      CHECK(set_intersect(parts[a], parts[b]).empty());
  }
  CHECK(covered == 2 * W);
}

TEST_CASE("laurent masks short-circuit to the unitary part") {
  WoldSets w = wold_sets(make_haar(), 3, Rat(16));
  CHECK(!w.note.empty());
  CHECK(w.E.base.empty());
  for (auto& s : w.F) CHECK(s.base.empty());
  for (auto& s : w.Ek) CHECK(s.base.empty());
  CHECK(w.E_inf_window == interval(-16, 16));
}

TEST_CASE("ladder construction rejects bad parameters") {
  CHECK_THROWS_AS(wold_sets(make_shannon(), 0, Rat(32)), std::invalid_argument);
  CHECK_THROWS_AS(wold_sets(make_shannon(), 5, Rat(32)), std::invalid_argument);
  CHECK_NOTHROW(wold_sets(make_shannon(), 3, Rat(16)));
}

TEST_CASE("split projection partitions the samples exactly") {
  WoldSets w = wold_sets(make_shannon(), 3, Rat(16));
  FourierGridFn h = make_fourier(parse_start("box:0,1"), 4, 2048);
  SplitParts parts = split_projection(make_shannon(), h, w);
  REQUIRE(parts.h_inf.n == h.n);
  for (size_t j = 0; j < (size_t)h.n; ++j) {
    CHECK(parts.h_inf.v[j] + parts.h_B.v[j] == h.v[j]);   // copy-or-zero split
    CHECK(parts.h_inf.v[j] * parts.h_B.v[j] == std::complex<double>(0.0, 0.0));
  }
  SplitParts again = split_projection(make_shannon(), parts.h_inf, w);
  CHECK(fourier_norm_sq(again.h_B) == 0.0);  // idempotent

  // a band-limited start has no shift part at all
  SplitParts band = split_projection(
      make_shannon(), make_fourier(parse_start("fbox:-1,1"), 4, 2048), w);
  CHECK(fourier_norm_sq(band.h_B) == 0.0);
}

TEST_CASE("unitary-part energy matches the closed form") {
  // W = 2^{k_max+1}: the residual is exactly [-pi, pi) with no window-edge
  // sliver, so h_inf is genuinely band-limited inside the window.
  WoldSets w = wold_sets(make_shannon(), 4, Rat(32));
  FourierGridFn h = make_fourier(parse_start("box:0,1"), 5, 4096);
  SplitParts parts = split_projection(make_shannon(), h, w);

  // h_inf is band-limited inside the window, so its periodization is complete:
  // p2(h_inf)(omega) = |sin(omega/2) / (omega/2)|^2 with no truncation error.
  auto p2i = fourier_p2_sampled(parts.h_inf);
  long stride = (long)p2i.size();
  for (long i = 0; i < stride; ++i) {
    double om = -3.14159265358979323846 + 2.0 * 3.14159265358979323846 * (double)i / (double)stride;
    double s = om == 0.0 ? 1.0 : std::sin(om / 2.0) / (om / 2.0);
    CHECK(std::abs(p2i[(size_t)i] - s * s) <= 1e-12);
  }

  // the two parts split the periodization pointwise
  auto p2b = fourier_p2_sampled(parts.h_B);
  auto p2h = fourier_p2_sampled(h);
  for (long i = 0; i < stride; ++i)
    CHECK(std::abs(p2i[(size_t)i] + p2b[(size_t)i] - p2h[(size_t)i]) <= 1e-11);

  // direct check of p2(h_B) = 1 - sinc^2: the window truncation leaves an
  // O(1/W) tail, so the comparison is honest only to about a percent here.
  for (long i = 0; i < stride; ++i) {
    double om = -3.14159265358979323846 + 2.0 * 3.14159265358979323846 * (double)i / (double)stride;
    double s = om == 0.0 ? 1.0 : std::sin(om / 2.0) / (om / 2.0);
    CHECK(std::abs(p2b[(size_t)i] - (1.0 - s * s)) <= 1.5e-2);
  }
}

TEST_CASE("shannon resolution ladder keeps the pythagoras identity") {
  auto rows = shannon_experiment(10);
  REQUIRE(rows.size() == 11);
  for (auto& r : rows)
    CHECK(std::abs(r.total * r.total - (r.inf_diff * r.inf_diff + r.B_norm * r.B_norm)) <= 1e-8);
  for (size_t n = 2; n < rows.size(); ++n) {
    CHECK(rows[n].B_norm <= rows[n - 1].B_norm + 1e-12);
    CHECK(rows[n].inf_diff <= rows[n - 1].inf_diff + 1e-12);
  }
  CHECK(rows.back().B_norm < rows[2].B_norm);
}

TEST_CASE("abstract model satisfies all five relations") {
  for (QmfFilter f : {make_haar(), make_shannon()}) {
    ModelReport r = abstract_model_check(f, 4, 64, 10);
    CHECK(r.adjoint_max <= 1e-10);
    CHECK(r.rel_rstar_max <= 1e-10);
    CHECK(r.rel_shift_max <= 1e-10);
    CHECK(r.kernel_max <= 1e-10);
    CHECK(r.wold_max <= 1e-10);
  }
}

TEST_CASE("model shift prepends a level that the adjoint kills") {
  ModelVec v;
  v.level = {{1.0, 0.5}, {0.25, -0.5}};
  ModelVec mv = model_M(v);
  REQUIRE(mv.level.size() == 3);
  CHECK(mv.level[0] == std::vector<std::complex<double>>{0.0, 0.0});
  CHECK(mv.level[1] == v.level[0]);
  ModelVec single;
  single.level = {{1.0, 2.0}};
  ModelVec dead = model_Mstar(make_haar(), 2, single);
  double s = 0.0;
  for (auto& l : dead.level)
    for (auto& x : l) s += std::norm(x);
  CHECK(s == 0.0);
}

TEST_CASE("commutant witness pins the failure degree") {
  LPoly alpha0 = lp(-2, {1, 2, 3, 2, 1}, 9);
  CommutantReport r = commutant_check(make_stretched_haar(), alpha0);
  CHECK(r.r_fixed);
  CHECK(!r.identity_holds);
  CHECK(r.witness_degree == 7);
  CHECK(r.witness_coeff == ExactScalar(rat(1, 18)));

  CommutantReport one = commutant_check(make_stretched_haar(), laurent_one<ExactScalar>());
  CHECK(one.r_fixed);
  CHECK(one.identity_holds);

  CommutantReport moved = commutant_check(make_haar(), lp(0, {1, 1}));
  CHECK(!moved.r_fixed);

  CHECK_THROWS_AS(commutant_check(make_shannon(), alpha0), std::invalid_argument);
}
