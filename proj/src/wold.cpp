#include "casclab/wold.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "casclab/rng.hpp"
#include "casclab/ruelle.hpp"
#include "casclab/zak.hpp"

namespace casclab {

namespace {

using cdbl = std::complex<double>;

PeriodicIntervalSet union_periodic(const PeriodicIntervalSet& x, const PeriodicIntervalSet& y) {
  if (x.period != y.period) throw std::domain_error("union_periodic requires equal periods");
  PeriodicIntervalSet p;
  p.period = x.period;
  p.base = set_union(x.base, y.base);
  return p;
}

// x \ y for equal periods; bases are canonical inside [0, period).
PeriodicIntervalSet diff_periodic(const PeriodicIntervalSet& x, const PeriodicIntervalSet& y) {
  if (x.period != y.period) throw std::domain_error("diff_periodic requires equal periods");
  PeriodicIntervalSet p;
  p.period = x.period;
  p.base = set_difference(x.base, y.base);
  return p;
}

}  // namespace

PeriodicIntervalSet kernel_set(const QmfFilter& f) {
  if (f.kind != QmfFilter::Kind::band) {
    // Polynomial masks vanish on a measure-zero set, so ker M* = {0}.
    PeriodicIntervalSet empty;
    empty.period = Rat(4);
    return empty;
  }
  PeriodicIntervalSet N = periodic_complement(f.support);
  return periodic_affine(N, Rat(2), Rat(0));  // E = 2 c0(N) + 4 pi Z
}

WoldSets wold_sets(const QmfFilter& f, int k_max, const Rat& window_half_width) {
  if (k_max < 1) throw std::invalid_argument("wold_sets requires k_max >= 1");
  if (window_half_width < pow2_rat(k_max + 1))
    throw std::invalid_argument("window must cover at least one period of F_{k_max+1}");

  WoldSets w;
  w.window = window_half_width;
  w.k_max = k_max;

  if (f.kind != QmfFilter::Kind::band) {
    w.E.period = Rat(4);
    for (int k = 1; k <= k_max + 1; ++k) {
      PeriodicIntervalSet empty;
      empty.period = pow2_rat(k + 1);
      w.F.push_back(empty);
      if (k <= k_max) {
        PeriodicIntervalSet e;
        e.period = pow2_rat(k + 2);
        w.Ek.push_back(e);
      }
    }
    w.E_inf_window = interval(-window_half_width, window_half_width);
    w.note =
        "laurent mask: N(m0) has measure zero, so ker M* = {0}; every splitting "
        "set is empty and the unitary part fills the window";
    return w;
  }

  w.E = kernel_set(f);

  // N_k = union_{j<k} sigma^{-j}(N), period 2;  F_k = 2^k c0(N_k) + 2^{k+1} pi Z.
  PeriodicIntervalSet N = periodic_complement(f.support);
  PeriodicIntervalSet Nk = N;
  for (int k = 1; k <= k_max + 1; ++k) {
    w.F.push_back(periodic_affine(Nk, pow2_rat(k), Rat(0)));
    Nk = union_periodic(Nk, sigma_preimage(N, k));
  }
  if (!(w.F[0] == w.E)) throw std::logic_error("F_1 disagrees with the kernel set");

  for (int k = 1; k <= k_max; ++k) {
    // common period 2^{k+2}: lift F_k by a factor of two
    w.Ek.push_back(diff_periodic(w.F[(size_t)k], lift_period(w.F[(size_t)(k - 1)], 2)));
  }

  IntervalSet covered = unroll(w.F[(size_t)k_max], -window_half_width, window_half_width);
  w.E_inf_window = complement_within(covered, -window_half_width, window_half_width);
  return w;
}

SplitParts split_projection(const QmfFilter& f, const FourierGridFn& fhat, const WoldSets& w) {
  if (f.kind != QmfFilter::Kind::band)
    throw std::invalid_argument("split_projection requires a band filter");
  SplitParts parts;
  parts.h_inf = fourier_mask(fhat, w.E_inf_window);
  parts.h_B = fhat;
  for (size_t j = 0; j < fhat.v.size(); ++j) parts.h_B.v[j] -= parts.h_inf.v[j];
  return parts;
}

std::vector<ShannonRow> shannon_experiment(int n_max) {
  if (n_max < 0) throw std::invalid_argument("shannon_experiment requires n_max >= 0");
  // Desk-scale memory bound: 2^{n+6} grid points at n = 20 is already a
  // gigabyte of samples. Deeper requests truncate to the feasible ladder.
  int n_eff = std::min(n_max, 20);

  QmfFilter filt = make_shannon();
  int m = 7;                          // window [-128 pi, 128 pi)
  long n_points = 1L << (n_eff + 6);  // keeps >= 64 points after n_eff halvings
  FourierGridFn f = make_fourier(parse_start("haar"), m, n_points);

  std::vector<ShannonRow> rows;
  rows.reserve((size_t)n_eff + 1);
  for (int n = 0;; ++n) {
    // phi^ = chi_{[-pi,pi)}; cascade steps leave the membership split exact:
    // (M^n h)|inside = M^n h_inf and (M^n h)|outside = M^n h_B on the grid.
    // omega_j/pi = (2j - n)*2^m/n, so |omega| < pi <=> -n <= (2j-n)<<m < n.
    double wgt = std::ldexp(1.0, f.m) / (double)f.n;
    double inf2 = 0.0, b2 = 0.0, tot2 = 0.0;
    for (long j = 0; j < f.n; ++j) {
      long t = (2 * j - f.n) << f.m;
      bool member = (t >= -f.n && t < f.n);
      cdbl d = member ? f.v[(size_t)j] - 1.0 : f.v[(size_t)j];
      double a = std::norm(d);
      (member ? inf2 : b2) += a;
      tot2 += a;  // independent accumulator, keeps the column identity honest
    }
    ShannonRow r;
    r.n = n;
    r.inf_diff = std::sqrt(wgt * inf2);
    r.B_norm = std::sqrt(wgt * b2);
    r.total = std::sqrt(wgt * tot2);
    rows.push_back(r);
    if (n == n_eff) break;
    f = fourier_cascade_step(filt, f);
  }
  return rows;
}

ModelVec model_M(const ModelVec& v) {
  if (v.level.empty()) return v;
  ModelVec out;
  out.level.reserve(v.level.size() + 1);
  out.level.emplace_back(v.level[0].size(), cdbl(0.0));
  for (auto& l : v.level) out.level.push_back(l);
  return out;
}

ModelVec model_Mstar(const QmfFilter& f, long N, const ModelVec& v) {
  auto m0 = m0_on_grid(f, N);
  ModelVec out;
  if (v.level.size() <= 1) return out;
  out.level.resize(v.level.size() - 1);
  for (size_t k = 0; k < out.level.size(); ++k) {
    out.level[k].resize((size_t)N);
    for (long j = 0; j < N; ++j) {
      double w = std::norm(m0[(size_t)((j << k) % N)]);
      out.level[k][(size_t)j] = w * v.level[k + 1][(size_t)j];
    }
  }
  return out;
}

ModelVec model_pi(long N, const LPolyF& alpha, const ModelVec& v) {
  std::vector<cdbl> as((size_t)N);
  for (long j = 0; j < N; ++j)
    as[(size_t)j] = eval(alpha, std::polar(1.0, -2.0 * 3.14159265358979323846 * (double)j / (double)N));
  ModelVec out = v;
  for (size_t k = 0; k < out.level.size(); ++k)
    for (long j = 0; j < N; ++j)
      out.level[k][(size_t)j] *= as[(size_t)((j << k) % N)];
  return out;
}

std::complex<double> model_inner(const QmfFilter& f, long N, const ModelVec& a,
                                 const ModelVec& b) {
  auto m0 = m0_on_grid(f, N);
  size_t L = std::min(a.level.size(), b.level.size());
  std::vector<double> W((size_t)N, 1.0);
  cdbl acc = 0.0;
  for (size_t k = 0; k < L; ++k) {
    if (k > 0)
      for (long j = 0; j < N; ++j) W[(size_t)j] *= std::norm(m0[(size_t)((j << (k - 1)) % N)]);
    cdbl s = 0.0;
    for (long j = 0; j < N; ++j)
      s += W[(size_t)j] * std::conj(a.level[k][(size_t)j]) * b.level[k][(size_t)j];
    acc += s / (double)N;
  }
  return acc;
}

ModelReport abstract_model_check(const QmfFilter& f, int n_levels, long N, int trials,
                                 std::uint64_t seed) {
  if (n_levels < 1 || N < 2) throw std::invalid_argument("abstract_model_check sizing");
  ModelReport rep;
  rep.N = N;
  rep.n_levels = n_levels;
  rep.trials = trials;

  auto m0 = m0_on_grid(f, N);
  Rng rng(seed);

  auto random_vec = [&]() {
    ModelVec v;
    v.level.resize((size_t)n_levels);
    for (auto& l : v.level) {
      l.resize((size_t)N);
      for (auto& x : l) x = rng.cbox();
    }
    return v;
  };
  auto random_alpha = [&]() {
    LPolyF a;
    a.lo = -2;
    a.c.resize(5);
    for (auto& x : a.c) x = rng.cbox();
    return a;
  };
  auto max_entry_dist = [](const ModelVec& a, const ModelVec& b) {
    double m = 0.0;
    size_t L = std::max(a.level.size(), b.level.size());
    for (size_t k = 0; k < L; ++k) {
      size_t n = std::max(k < a.level.size() ? a.level[k].size() : 0,
                          k < b.level.size() ? b.level[k].size() : 0);
      for (size_t j = 0; j < n; ++j) {
        cdbl x = (k < a.level.size() && j < a.level[k].size()) ? a.level[k][j] : cdbl(0.0);
        cdbl y = (k < b.level.size() && j < b.level[k].size()) ? b.level[k][j] : cdbl(0.0);
        m = std::max(m, std::abs(x - y));
      }
    }
    return m;
  };

  for (int t = 0; t < trials; ++t) {
    ModelVec v = random_vec(), w = random_vec();
    LPolyF alpha = random_alpha();

    // (1) adjointness under the weighted inner product, both at matching
    // depth (u = Mw pairs every level) and with the plain probe w
    ModelVec u = model_M(w);
    cdbl a1 = model_inner(f, N, model_M(v), u);
    cdbl a2 = model_inner(f, N, v, model_Mstar(f, N, u));
    rep.adjoint_max = std::max(rep.adjoint_max, std::abs(a1 - a2));
    cdbl b1 = model_inner(f, N, model_M(v), w);
    cdbl b2 = model_inner(f, N, v, model_Mstar(f, N, w));
    rep.adjoint_max = std::max(rep.adjoint_max, std::abs(b1 - b2));

    // (2) M* pi(alpha) M = pi(R* alpha)
    ModelVec lhs2 = model_Mstar(f, N, model_pi(N, alpha, model_M(v)));
    ModelVec rhs2;
    if (f.kind == QmfFilter::Kind::laurent) {
      rhs2 = model_pi(N, ruelle_adjoint(f, alpha), v);
    } else {
      // band: R* alpha has no Laurent form; evaluate (R* alpha)(z) =
      // |m0(z)|^2 alpha(z^2) on the base grid and push through the level maps
      std::vector<cdbl> as((size_t)N), bs((size_t)N);
      for (long j = 0; j < N; ++j)
        as[(size_t)j] =
            eval(alpha, std::polar(1.0, -2.0 * 3.14159265358979323846 * (double)j / (double)N));
      for (long j = 0; j < N; ++j)
        bs[(size_t)j] = std::norm(m0[(size_t)j]) * as[(size_t)((2 * j) % N)];
      rhs2 = v;
      for (size_t k = 0; k < rhs2.level.size(); ++k)
        for (long j = 0; j < N; ++j)
          rhs2.level[k][(size_t)j] *= bs[(size_t)((j << k) % N)];
    }
    rep.rel_rstar_max = std::max(rep.rel_rstar_max, max_entry_dist(lhs2, rhs2));

    // (3) pi(alpha) M = M pi(alpha(z^2))
    ModelVec lhs3 = model_pi(N, alpha, model_M(v));
    ModelVec rhs3 = model_M(model_pi(N, upsample(alpha, 2), v));
    rep.rel_shift_max = std::max(rep.rel_shift_max, max_entry_dist(lhs3, rhs3));

    // (4) level-0 slot sits inside ker M*
    ModelVec slot;
    slot.level.push_back(v.level[0]);
    ModelVec dead = model_Mstar(f, N, slot);
    double kn = 0.0;
    for (auto& l : dead.level)
      for (auto& x : l) kn = std::max(kn, std::abs(x));
    rep.kernel_max = std::max(rep.kernel_max, kn);

    // (5) Wold sum: v = sum_k M^k (level-k slice), levels orthogonal
    double norm2 = model_inner(f, N, v, v).real();
    double parts = 0.0;
    for (size_t k = 0; k < v.level.size(); ++k) {
      ModelVec comp;
      comp.level.push_back(v.level[k]);
      for (size_t i = 0; i < k; ++i) comp = model_M(comp);
      parts += model_inner(f, N, comp, comp).real();
    }
    rep.wold_max = std::max(rep.wold_max, std::abs(norm2 - parts));
  }
  return rep;
}

CommutantReport commutant_check(const QmfFilter& f, const LPoly& alpha0) {
  if (f.kind != QmfFilter::Kind::laurent || !f.exact)
    throw std::invalid_argument("commutant_check requires an exact laurent mask");
  CommutantReport rep;
  rep.r_fixed = (ruelle_apply(f, alpha0) == alpha0);

  LPoly w = f.weight();
  LPoly lhs = laurent_mul(w, alpha0);
  LPoly rhs = laurent_mul(w, upsample(alpha0, 2));
  LPoly diff = sub(rhs, lhs);
  rep.identity_holds = diff.is_zero();
  if (!rep.identity_holds) {
    rep.witness_degree = diff.hi();
    rep.witness_coeff = diff.at(diff.hi());
  }
  return rep;
}

}  // namespace casclab
