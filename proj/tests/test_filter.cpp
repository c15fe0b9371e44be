#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <string>

#include "casclab/filter.hpp"
#include "casclab/io.hpp"
#include "casclab/sampled.hpp"

using namespace casclab;

namespace {

LPoly lp(long lo, std::vector<long long> nums, long long den = 1) {
  std::vector<ExactScalar> c;
  c.reserve(nums.size());
  for (long long n : nums) c.push_back(ExactScalar(rat(n, den)));
  return laurent_from(lo, std::move(c));
}

std::string temp_config(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "casclab_filter_tests";
  std::filesystem::create_directories(dir);
  std::string path = (dir / name).string();
  write_text_file(path, text);
  return path;
}

std::complex<double> root(long j, long n) {
  return std::polar(1.0, -2.0 * std::numbers::pi * (double)j / (double)n);
}

bool axiom_failed(const ValidationReport& r, const std::string& axiom) {
  for (auto& c : r.checks)
    if (c.axiom == axiom) return !c.pass;
  return false;
}

}  // namespace

TEST_CASE("shipped filters pass validation") {
  for (auto make : {make_haar, make_stretched_haar}) {
    ValidationReport r = validate(make());
    CHECK(r.passed);
    for (auto& c : r.checks) {
      CHECK(c.pass);
      CHECK(c.residual == 0.0);  // exact arithmetic, exact zero
    }
  }
  CHECK(validate(make_shannon()).passed);
  CHECK(validate(make_daub4()).passed);
}

TEST_CASE("perturbed haar fails both lowpass and qmf") {
  ValidationReport r = validate(make_perturbed_haar());
  CHECK(!r.passed);
  CHECK(axiom_failed(r, "qmf"));
  CHECK(axiom_failed(r, "lowpass"));  // coefficients sum to 21/10, not 2
}

TEST_CASE("qmf identity holds pointwise on the circle") {
  for (QmfFilter f : {make_haar(), make_stretched_haar(), make_daub4()}) {
    double worst = 0.0;
    for (long j = 0; j < 256; ++j) {
      std::complex<double> z = root(j, 256);
      worst = std::max(worst, std::abs(std::norm(f.m0_eval(z)) +
                                       std::norm(f.m0_eval(-z)) - 2.0));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("weight is the exact squared modulus of the mask") {
  QmfFilter haar = make_haar();
  CHECK(haar.weight() == lp(-1, {1, 2, 1}, 2));
  CHECK(max_coeff_dist(haar.weightf(), to_float(haar.weight())) == 0.0);
  CHECK(std::abs(haar.m0_eval({1.0, 0.0}) - std::sqrt(2.0)) <= 1e-15);
  QmfFilter sh = make_shannon();
  CHECK(sh.m0_band(Rat(0)) == std::sqrt(2.0));
  CHECK(sh.m0_band(rat(1, 2)) == 0.0);              // right endpoint open
  CHECK(sh.m0_band(Dyadic{-1, -1}) == std::sqrt(2.0));  // left endpoint closed
}

TEST_CASE("high-pass partner vanishes at z = 1 and flips the band") {
  QmfFilter g = high_pass(make_haar());
  CHECK(g.mask == lp(0, {-1, 1}));
  CHECK(std::abs(g.m0_eval({1.0, 0.0})) <= 1e-15);
  for (QmfFilter f : {make_haar(), make_stretched_haar(), make_daub4()}) {
    QmfFilter m1 = high_pass(f);
    for (long j = 0; j < 64; ++j) {
      std::complex<double> z = root(j, 64);
      std::complex<double> want = z * std::conj(f.m0_eval(-z));
      CHECK(std::abs(m1.m0_eval(z) - want) <= 1e-12);
    }
  }
  QmfFilter hs = high_pass(make_shannon());
  CHECK(hs.support.contains(Rat(1)));  // omega = pi
  CHECK(!hs.support.contains(Rat(0)));
  CHECK(!axiom_failed(validate(hs), "qmf"));  // still tiles against its pi-shift
}

TEST_CASE("filter products telescope and keep the central coefficient") {
  QmfFilter haar = make_haar(), s3 = make_stretched_haar();
  ExactScalar h = ExactScalar::half_pow2(-1);
  CHECK(filter_product(haar, 1).poly == scale(haar.mask, h));
  CHECK(filter_product(haar, 2).poly == lp(0, {1, 1, 1, 1}, 2));

  for (const QmfFilter& f : {haar, s3}) {
    ExactScalar a0 = f.mask.at(0) * h;
    ExactScalar m(1);
    for (int n = 1; n <= 6; ++n) {
      m = m * a0;
      CHECK(filter_product(f, n).poly.at(0) == m);  // lowest slot multiplies up
      // m0^(n+1)(z) = m0^(n)(z) * m0(z^{2^n})
      LPoly next = laurent_mul(filter_product(f, n).poly, upsample(scale(f.mask, h), 1L << n));
      CHECK(filter_product(f, n + 1).poly == next);
    }
  }
  CHECK_THROWS_AS(filter_product(haar, 8, 4), std::length_error);
  CHECK_THROWS_AS(filter_product(haar, 0), std::invalid_argument);
}

TEST_CASE("band filter products live on nested supports") {
  FilterProduct p2 = filter_product(make_shannon(), 2);
  CHECK(p2.band);
  // support = {omega : omega and 2 omega both land in the base band}
  CHECK(p2.support.contains(Rat(0)));
  CHECK(p2.support.contains(rat(1, 8)));
  CHECK(!p2.support.contains(rat(3, 8)));
  CHECK(p2.support.contains(rat(15, 8)));  // = -1/8 mod 2
}

TEST_CASE("approximation kernels have unit mean") {
  QmfFilter haar = make_haar(), s3 = make_stretched_haar();
  CHECK(kernel_dn(haar, 1).poly == lp(-1, {1, 2, 1}, 2));
  for (const QmfFilter& f : {haar, s3})
    for (int n = 1; n <= 8; ++n) CHECK(kernel_dn(f, n).mean_exact() == ExactScalar(1));
  SampledCircleFn s = sample(kernel_dn(haar, 3).poly, 128);
  for (auto& v : s.v) CHECK(v.real() >= -1e-12);  // D_n = |m0^(n)|^2 >= 0
  CHECK(kernel_dn(make_daub4(), 4).polyf.at(0).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 1; n <= 4; ++n)
    CHECK(kernel_dn(make_shannon(), n).mean() == doctest::Approx(1.0));
}

TEST_CASE("zero sets: exact arcs for bands, isolated points for masks") {
  ZeroSet zb = zero_set(make_shannon());
  CHECK(!zb.measure_zero);
  CHECK(zb.arcs == set_union(interval(Rat(-1), rat(-1, 2)), interval(rat(1, 2), Rat(1))));

  ZeroSet zh = zero_set(make_haar());
  CHECK(zh.measure_zero);
  REQUIRE(!zh.points.empty());
  for (double w : zh.points)
    CHECK(std::abs(std::abs(w) - std::numbers::pi) <= 1e-6);  // only root z = -1

  ZeroSet zd = zero_set(make_daub4());
  CHECK(zd.measure_zero);
  for (double w : zd.points)
    CHECK(std::abs(make_daub4().m0_eval(std::polar(1.0, -w))) <= 1e-6);
}

TEST_CASE("square-map preimages halve and replicate the band") {
  PeriodicIntervalSet N = periodic(zero_set(make_shannon()).arcs, Rat(2));
  PeriodicIntervalSet pre = sigma_preimage(N, 2);
  PeriodicIntervalSet want = periodic(
      normalize({{rat(1, 8), rat(3, 8)},
                 {rat(5, 8), rat(7, 8)},
                 {rat(9, 8), rat(11, 8)},
                 {rat(13, 8), rat(15, 8)}}),
      Rat(2));
  CHECK(pre == want);
  CHECK(sigma_preimage(N, 0) == N);
  CHECK(unroll(pre, Rat(0), Rat(2)).measure() == unroll(N, Rat(0), Rat(2)).measure());
}

TEST_CASE("filter json round-trips the shipped definitions") {
  std::string haar_path = temp_config(
      "haar.json",
      R"({"name":"haar","kind":"laurent","scalar":"exact","offset":0,"mask":[[1,1],[1,1]]})");
  QmfFilter f = load_filter(haar_path);
  CHECK(f.exact);
  CHECK(f.mask == make_haar().mask);
  CHECK(f.name == "haar");

  std::string band_path =
      temp_config("band.json", R"({"kind":"band","support":[[-1,2],[1,2]]})");
  QmfFilter b = load_filter(band_path);
  CHECK(b.kind == QmfFilter::Kind::band);
  CHECK(b.support == make_shannon().support);
  CHECK(b.name == "band");  // file stem fallback

  std::string d4_path = temp_config(
      "d4.json",
      R"({"kind":"laurent","scalar":"float","mask":[0.6830127018922193,1.1830127018922193,0.3169872981077807,-0.18301270189221932]})");
  QmfFilter d = load_filter(d4_path);
  CHECK(!d.exact);
  CHECK(validate(d).passed);
  CHECK(max_coeff_dist(d.maskf, make_daub4().maskf) <= 1e-15);
}

TEST_CASE("filter json rejects malformed definitions") {
  CHECK_THROWS_AS(
      filter_from_json_text(R"({"kind":"laurent","scalar":"exact","mask":[0.5,0.5]})", "x"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      filter_from_json_text(R"({"kind":"laurent","scalar":"float","mask":["a"]})", "x"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      filter_from_json_text(R"({"kind":"laurent","scalar":"decimal","mask":[[1,1]]})", "x"),
      std::invalid_argument);
  CHECK_THROWS_AS(filter_from_json_text(R"({"kind":"spline","mask":[]})", "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(filter_from_json_text(R"({"kind":"band","support":[[1,2]]})", "x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_filter("/nonexistent/filter.json"), std::runtime_error);
}
