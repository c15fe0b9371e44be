#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "casclab/filter.hpp"
#include "casclab/grid_fn.hpp"
#include "casclab/rng.hpp"
#include "casclab/zak.hpp"

using namespace casclab;
using cdbl = std::complex<double>;

namespace {

GridFnF random_grid(Rng& rng) {
  GridFnF h;
  h.level = (int)rng.range(1, 2);
  h.start = rng.range(-6, 5);  // keeps support inside [-8, 8) for inversion
  h.v.resize((size_t)rng.range(1, 6));
  for (auto& x : h.v) x = rng.cbox();
  return trim_grid(h);
}

double grid_dist(const GridFnF& a, const GridFnF& b) {
  return std::sqrt(std::abs(norm_sq(grid_sub(a, b))));
}

const GridFnF kBox{0, 0, {cdbl(1.0, 0.0)}};

}  // namespace

TEST_CASE("transform of the unit box is identically one") {
  ZakArray H = zak_forward(kBox, 8, 8);
  for (long k = 0; k < 8; ++k)
    for (long j = 0; j < 8; ++j) CHECK(H.h[(size_t)k][(size_t)j] == cdbl(1.0, 0.0));
  // a unit translate picks up the z factor
  ZakArray T = zak_forward(shift_grid(kBox, 1), 8, 8);
  for (long k = 0; k < 8; ++k)
    for (long j = 0; j < 8; ++j)
      CHECK(std::abs(T.h[(size_t)k][(size_t)j] - H.zk(k)) <= 1e-12);
}

TEST_CASE("transform is isometric and invertible on resolvable grids") {
  Rng rng(0x2AC);
  for (int t = 0; t < 20; ++t) {
    GridFnF h = random_grid(rng);
    ZakArray H = zak_forward(h, 16, 16);
    CHECK(std::abs(zak_norm_sq(H) - std::abs(norm_sq(h))) <= 1e-12);
    CHECK(grid_dist(zak_inverse(H), refine_to(h, 4)) <= 1e-12);
  }
  CHECK_THROWS_AS(zak_forward(GridFnF{5, 0, {cdbl(1.0, 0.0)}}, 8, 8),
                  std::invalid_argument);
}

TEST_CASE("support outside the fundamental window aliases modulo n_z") {
  ZakArray H = zak_forward(GridFnF{0, 5, {cdbl(1.0, 0.0)}}, 8, 8);
  CHECK(grid_dist(zak_inverse(H), GridFnF{3, -24, std::vector<cdbl>(8, 1.0)}) <= 1e-12);
}

TEST_CASE("accessor extends quasi-periodically in x") {
  Rng rng(0x09A);
  ZakArray H = zak_forward(random_grid(rng), 16, 16);
  for (long k = 0; k < 16; ++k)
    for (long j = -3; j < 19; ++j)
      CHECK(std::abs(zak_at(H, k, j + 16) - std::conj(H.zk(k)) * zak_at(H, k, j)) <= 1e-12);
}

TEST_CASE("dictionary operators match their grid-side actions") {
  QmfFilter haar = make_haar();
  Rng rng(0xD1C7);
  const long n_z = 16, n_x = 16;
  for (int t = 0; t < 10; ++t) {
    GridFnF h = random_grid(rng);
    ZakArray H = zak_forward(h, n_z, n_x);
    DictArgs a;

    // T_n multiplies by z^{-n} and pairs with the shift h(. + n)
    a.n = rng.range(-3, 3);
    CHECK(zak_dist_max(dict_apply("translation", a, H),
                       zak_forward(shift_grid(h, -a.n), n_z, n_x)) <= 1e-12);

    a.alpha = LPolyF{};
    a.alpha.lo = -1;
    a.alpha.c = {rng.cbox(), rng.cbox(), rng.cbox()};
    CHECK(zak_dist_max(dict_apply("pi_alpha", a, H),
                       zak_forward(pi_alpha(a.alpha, h), n_z, n_x)) <= 1e-12);

    a.filter = &haar;
    CHECK(zak_dist_max(dict_apply("M", a, H),
                       zak_forward(cascade_step(haar, h), n_z / 2, n_x)) <= 1e-12);
    CHECK(zak_dist_max(dict_apply("M_star", a, H),
                       zak_forward(cascade_adjoint_grid(haar, h), 2 * n_z, n_x / 2)) <= 1e-12);

    // E_t phases cells at their left edges; refine until edges hit the x-samples
    a.n = rng.range(-4, 4);
    double t_mod = 2.0 * std::numbers::pi * (double)a.n / (double)n_z;
    CHECK(zak_dist_max(dict_apply("E_t", a, H),
                       zak_forward(grid_modulate(refine_to(h, 4), t_mod), n_z, n_x)) <= 1e-12);
    a.n = 0;
    CHECK(zak_dist_max(dict_apply("E_t", a, H), H) == 0.0);

    ZakArray twice = zak_half_translate(zak_half_translate(H));
    CHECK(zak_dist_max(twice, zak_translate(H, 1)) <= 1e-12);

    ZakArray F4 = H;
    for (int r = 0; r < 4; ++r) F4 = dict_apply("F", DictArgs{}, F4);
    CHECK(zak_dist_max(F4, H) <= 1e-10);
  }
  CHECK_THROWS_AS(dict_apply("unknown_op", DictArgs{}, zak_zero(8, 8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(zak_half_translate(zak_forward(kBox, 8, 9)), std::invalid_argument);
}

TEST_CASE("haar cascade fixed point survives on the zak side") {
  QmfFilter haar = make_haar();
  ZakArray H = zak_forward(kBox, 16, 16);
  DictArgs a;
  a.filter = &haar;
  CHECK(zak_dist_max(dict_apply("M", a, H), zak_forward(kBox, 8, 16)) <= 1e-12);
}

TEST_CASE("grid-side adjoint pairs with the cascade step") {
  Rng rng(0xADD);
  for (QmfFilter f : {make_haar(), make_stretched_haar()}) {
    for (int t = 0; t < 10; ++t) {
      GridFnF h1 = random_grid(rng), h2 = random_grid(rng);
      cdbl lhs = inner(cascade_step(f, h1), h2);
      cdbl rhs = inner(h1, cascade_adjoint_grid(f, h2));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("sampled correlation form evaluates the shift series") {
  Rng rng(0x93);
  for (int t = 0; t < 10; ++t) {
    GridFnF h1 = random_grid(rng), h2 = random_grid(rng);
    ZakArray A = zak_forward(h1, 16, 16), B = zak_forward(h2, 16, 16);
    auto p3 = p3_sampled(A, B);
    LPolyF p = correlation(h1, h2);
    for (long k = 0; k < 16; ++k)
      CHECK(std::abs(p3[(size_t)k] - eval(p, A.zk(k))) <= 1e-10);
  }
}

TEST_CASE("transfer operator intertwines sampled correlations of cascades") {
  Rng rng(0x1E44);
  for (QmfFilter f : {make_haar(), make_stretched_haar(), make_daub4()}) {
    for (int t = 0; t < 5; ++t) {
      GridFnF h1 = random_grid(rng), h2 = random_grid(rng);
      auto lhs = ruelle_apply_sampled(f, p3_sampled(zak_forward(h1, 16, 16),
                                                    zak_forward(h2, 16, 16)));
      auto rhs = p3_sampled(zak_forward(cascade_step(f, h1), 8, 16),
                            zak_forward(cascade_step(f, h2), 8, 16));
      REQUIRE(lhs.size() == 8);
      for (size_t k = 0; k < 8; ++k) CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-10);
    }
  }
}

TEST_CASE("mask samples follow the exact band values") {
  auto mh = m0_on_grid(make_haar(), 16);
  for (long k = 0; k < 16; ++k) {
    cdbl zk = std::polar(1.0, -2.0 * std::numbers::pi * (double)k / 16.0);
    CHECK(std::abs(mh[(size_t)k] - (1.0 + zk) / std::sqrt(2.0)) <= 1e-12);
  }
  auto ms = m0_on_grid(make_shannon(), 8);
  for (long k = 0; k < 8; ++k) {
    bool in_band = (k == 0 || k == 1 || k == 6 || k == 7);
    CHECK(ms[(size_t)k] == cdbl(in_band ? std::sqrt(2.0) : 0.0, 0.0));
  }
}

TEST_CASE("commutation relations hold on random zak data") {
  HarnessReport r = commutation_harness(make_haar(), 10, 16, 16);
  CHECK(r.rel1_max <= 1e-10);
  CHECK(r.rel2_max <= 1e-10);
  CHECK(r.rel1_mean <= r.rel1_max);
  CHECK_THROWS_AS(commutation_harness(make_haar(), 1, 6, 16), std::invalid_argument);

  // degenerate inputs sit exactly on the relation
  LPolyF one = laurent_one<cdbl>();
  CHECK(rel1_residual(make_haar(), zak_zero(16, 16), one) == 0.0);
  CHECK(rel2_residual(make_haar(), zak_zero(16, 16), one) == 0.0);

  // alpha = 1: rel1 reduces to M* M = pi(R* 1) = pi(weight) on even columns
  Rng rng(0x777);
  ZakArray H = zak_forward(random_grid(rng), 16, 16);
  CHECK(rel1_residual(make_stretched_haar(), H, one) <= 1e-10);
  CHECK(rel2_residual(make_stretched_haar(), H, one) <= 1e-10);
}
