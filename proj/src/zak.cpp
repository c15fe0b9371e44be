#include "casclab/zak.hpp"

#include <cmath>
#include <stdexcept>

#include "casclab/rng.hpp"
#include "casclab/ruelle.hpp"

namespace casclab {
namespace {

constexpr double kPi = 3.14159265358979323846;
using cdbl = std::complex<double>;

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long n) {
  if (!is_pow2(n)) throw std::invalid_argument("size must be a power of two");
  int t = 0;
  while ((1L << t) < n) ++t;
  return t;
}

void require_grid(const ZakArray& H) {
  if (H.n_z < 1 || H.n_x < 1 || (long)H.h.size() != H.n_z)
    throw std::invalid_argument("malformed ZakArray");
}

GridFnF grid_to_float(const GridFn& g) {
  GridFnF r;
  r.level = g.level;
  r.start = g.start;
  r.v.reserve(g.v.size());
  for (auto& x : g.v) r.v.push_back(x.to_double());
  return r;
}

}  // namespace

cdbl ZakArray::zk(long k) const { return std::polar(1.0, -2.0 * kPi * double(k) / double(n_z)); }

ZakArray zak_zero(long n_z, long n_x) {
  ZakArray H;
  H.n_z = n_z;
  H.n_x = n_x;
  H.h.assign((size_t)n_z, std::vector<cdbl>((size_t)n_x, 0.0));
  return H;
}

cdbl zak_at(const ZakArray& H, long k, long j) {
  long t = floor_div_long(j, H.n_x);
  long j0 = j - t * H.n_x;
  cdbl v = H.h[(size_t)(((k % H.n_z) + H.n_z) % H.n_z)][(size_t)j0];
  if (t == 0) return v;
  // H(z, x + t) = z^{-t} H(z, x); |z| = 1, so z^{-t} = e^{+2 pi i k t / n_z}.
  return std::polar(1.0, 2.0 * kPi * double(k) * double(t) / double(H.n_z)) * v;
}

double zak_norm_sq(const ZakArray& H) {
  double s = 0.0;
  for (auto& row : H.h)
    for (auto& x : row) s += std::norm(x);
  return s / (double(H.n_z) * double(H.n_x));
}

double zak_dist_max(const ZakArray& A, const ZakArray& B) {
  if (A.n_z != B.n_z || A.n_x != B.n_x) throw std::invalid_argument("zak grids differ");
  double m = 0.0;
  for (long k = 0; k < A.n_z; ++k)
    for (long j = 0; j < A.n_x; ++j)
      m = std::max(m, std::abs(A.h[(size_t)k][(size_t)j] - B.h[(size_t)k][(size_t)j]));
  return m;
}

ZakArray zak_add(const ZakArray& A, const ZakArray& B) {
  if (A.n_z != B.n_z || A.n_x != B.n_x) throw std::invalid_argument("zak grids differ");
  ZakArray C = A;
  for (long k = 0; k < A.n_z; ++k)
    for (long j = 0; j < A.n_x; ++j) C.h[(size_t)k][(size_t)j] += B.h[(size_t)k][(size_t)j];
  return C;
}

ZakArray zak_forward(const GridFnF& h, long n_z, long n_x) {
  long cells = 1L << h.level;
  if (n_x % cells != 0)
    throw std::invalid_argument("n_x does not resolve the grid level");
  ZakArray H = zak_zero(n_z, n_x);
  if (h.is_zero()) return H;
  for (long j = 0; j < n_x; ++j) {
    long q = (j * cells) / n_x;  // level-J cell of x_j within [0,1)
    // cells q + n*2^J hit the support for n in [nlo, nhi]
    long nlo = floor_div_long(h.start - q + cells - 1, cells);
    long nhi = floor_div_long(h.start + h.len() - 1 - q, cells);
    for (long k = 0; k < n_z; ++k) {
      cdbl acc = 0.0;
      for (long n = nlo; n <= nhi; ++n) {
        cdbl val = h.at(q + n * cells);
        if (val == 0.0) continue;
        acc += std::polar(1.0, -2.0 * kPi * double(k) * double(n) / double(n_z)) * val;
      }
      H.h[(size_t)k][(size_t)j] = acc;
    }
  }
  return H;
}

ZakArray zak_forward(const GridFn& h, long n_z, long n_x) {
  return zak_forward(grid_to_float(h), n_z, n_x);
}

GridFnF zak_inverse(const ZakArray& H) {
  require_grid(H);
  int J = log2_exact(H.n_x);
  if (H.n_z % 2 != 0) throw std::invalid_argument("n_z must be even");
  GridFnF g;
  g.level = J;
  g.start = -(H.n_z / 2) * H.n_x;
  g.v.assign((size_t)(H.n_z * H.n_x), 0.0);
  for (long n = -H.n_z / 2; n < H.n_z / 2; ++n) {
    for (long j = 0; j < H.n_x; ++j) {
      cdbl acc = 0.0;
      for (long k = 0; k < H.n_z; ++k)
        acc += std::polar(1.0, 2.0 * kPi * double(k) * double(n) / double(H.n_z)) *
               H.h[(size_t)k][(size_t)j];
      g.v[(size_t)((n + H.n_z / 2) * H.n_x + j)] = acc / double(H.n_z);
    }
  }
  return trim_grid(std::move(g));
}

std::vector<cdbl> m0_on_grid(const QmfFilter& f, long n) {
  std::vector<cdbl> m((size_t)n);
  if (f.kind == QmfFilter::Kind::band) {
    int p = log2_exact(n);
    // z_k = e^{-2 pi i k/n} corresponds to omega = 2 pi k / n, i.e. omega/pi = 2k/n.
    for (long k = 0; k < n; ++k) m[(size_t)k] = f.m0_band(Dyadic{2 * k, -p});
    return m;
  }
  for (long k = 0; k < n; ++k)
    m[(size_t)k] = f.m0_eval(std::polar(1.0, -2.0 * kPi * double(k) / double(n)));
  return m;
}

ZakArray zak_translate(const ZakArray& H, long n) {
  require_grid(H);
  ZakArray R = H;
  for (long k = 0; k < H.n_z; ++k) {
    cdbl ph = std::polar(1.0, 2.0 * kPi * double(k) * double(n) / double(H.n_z));  // z_k^{-n}
    for (auto& x : R.h[(size_t)k]) x *= ph;
  }
  return R;
}

ZakArray zak_pi(const LPolyF& alpha, const ZakArray& H) {
  require_grid(H);
  ZakArray R = H;
  for (long k = 0; k < H.n_z; ++k) {
    cdbl a = eval(alpha, H.zk(k));
    for (auto& x : R.h[(size_t)k]) x *= a;
  }
  return R;
}

ZakArray zak_modulate(const ZakArray& H, long s) {
  require_grid(H);
  // E_t h = e^{itx} h with t = 2 pi s / n_z; Zak side: e^{itx} H(z e^{it}, x),
  // and z_k e^{it} = z_{k-s} on the grid.
  ZakArray R = zak_zero(H.n_z, H.n_x);
  for (long k = 0; k < H.n_z; ++k) {
    long src = ((k - s) % H.n_z + H.n_z) % H.n_z;
    for (long j = 0; j < H.n_x; ++j) {
      double tx = 2.0 * kPi * double(s) * double(j) / (double(H.n_z) * double(H.n_x));
      R.h[(size_t)k][(size_t)j] = std::polar(1.0, tx) * H.h[(size_t)src][(size_t)j];
    }
  }
  return R;
}

ZakArray zak_half_translate(const ZakArray& H) {
  require_grid(H);
  if (H.n_x % 2 != 0) throw std::invalid_argument("n_x must be even for the half shift");
  ZakArray R = zak_zero(H.n_z, H.n_x);
  for (long k = 0; k < H.n_z; ++k)
    for (long j = 0; j < H.n_x; ++j) R.h[(size_t)k][(size_t)j] = zak_at(H, k, j + H.n_x / 2);
  return R;
}

ZakArray zak_M(const QmfFilter& f, const ZakArray& H) {
  require_grid(H);
  if (H.n_z % 2 != 0) throw std::invalid_argument("n_z must be even for M");
  auto m0 = m0_on_grid(f, H.n_z);
  ZakArray R = zak_zero(H.n_z / 2, H.n_x);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (long k = 0; k < R.n_z; ++k) {
    for (long j = 0; j < R.n_x; ++j) {
      // the two square roots of z-grid point k are indices k and k + n_z/2
      cdbl acc = m0[(size_t)k] * zak_at(H, k, 2 * j) +
                 m0[(size_t)(k + H.n_z / 2)] * zak_at(H, k + H.n_z / 2, 2 * j);
      R.h[(size_t)k][(size_t)j] = inv_sqrt2 * acc;
    }
  }
  return R;
}

ZakArray zak_Mstar(const QmfFilter& f, const ZakArray& H) {
  require_grid(H);
  if (H.n_x % 2 != 0) throw std::invalid_argument("n_x must be even for M*");
  auto m0 = m0_on_grid(f, 2 * H.n_z);
  ZakArray R = zak_zero(2 * H.n_z, H.n_x / 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (long a = 0; a < R.n_z; ++a) {
    long ab = a % H.n_z;  // index of z^2 = z'_a^2 on the input grid
    cdbl za = R.zk(a);
    for (long j = 0; j < R.n_x; ++j) {
      cdbl acc = H.h[(size_t)ab][(size_t)j] + za * H.h[(size_t)ab][(size_t)(j + R.n_x)];
      R.h[(size_t)a][(size_t)j] = inv_sqrt2 * std::conj(m0[(size_t)a]) * acc;
    }
  }
  return R;
}

ZakArray zak_fourier_swap(const ZakArray& H) {
  require_grid(H);
  if (H.n_z != H.n_x) throw std::invalid_argument("fourier swap needs n_z == n_x");
  ZakArray R = zak_zero(H.n_z, H.n_x);
  for (long a = 0; a < H.n_z; ++a) {
    for (long b = 0; b < H.n_x; ++b) {
      cdbl ph = std::polar(1.0, 2.0 * kPi * double(a) * double(b) /
                                    (double(H.n_z) * double(H.n_x)));
      cdbl v = a == 0 ? H.h[(size_t)b][0] : H.zk(b) * H.h[(size_t)b][(size_t)(H.n_x - a)];
      R.h[(size_t)a][(size_t)b] = ph * v;
    }
  }
  return R;
}

GridFnF grid_modulate(const GridFnF& h, double t) {
  GridFnF r = h;
  double d = std::ldexp(1.0, -h.level);
  for (long i = 0; i < r.len(); ++i)
    r.v[(size_t)i] *= std::polar(1.0, t * double(h.start + i) * d);
  return r;
}

GridFnF cascade_adjoint_grid(const QmfFilter& f, const GridFnF& h) {
  if (f.kind != QmfFilter::Kind::laurent)
    throw std::invalid_argument("cascade_adjoint_grid needs a laurent filter");
  LPolyF mask = f.maskf;
  if (h.is_zero() || mask.is_zero()) return {h.level + 1, 0, {}};
  GridFnF r;
  r.level = h.level + 1;
  long two = 1L << r.level;  // 2^{J+1}
  long cmin = 4 * h.start - mask.hi() * two;
  long cmax = 4 * (h.start + h.len()) - mask.lo * two;  // exclusive
  r.start = cmin;
  r.v.assign((size_t)(cmax - cmin), 0.0);
  for (long n = mask.lo; n <= mask.hi(); ++n) {
    cdbl w = 0.5 * std::conj(mask.at(n));
    if (w == 0.0) continue;
    for (long c = cmin; c < cmax; ++c) {
      cdbl v = h.at(floor_div_long(c + n * two, 4));
      if (v != 0.0) r.v[(size_t)(c - cmin)] += w * v;
    }
  }
  return trim_grid(std::move(r));
}

ZakArray dict_apply(const std::string& op_name, const DictArgs& args, const ZakArray& H) {
  if (op_name == "translation") return zak_translate(H, args.n);
  if (op_name == "pi_alpha") return zak_pi(args.alpha, H);
  if (op_name == "E_t") return zak_modulate(H, args.n);
  if (op_name == "T_half") return zak_half_translate(H);
  if (op_name == "F") return zak_fourier_swap(H);
  if (op_name == "M" || op_name == "M_star") {
    if (!args.filter) throw std::invalid_argument(op_name + " needs a filter");
    return op_name == "M" ? zak_M(*args.filter, H) : zak_Mstar(*args.filter, H);
  }
  throw std::invalid_argument("unknown dictionary op: " + op_name);
}

std::vector<cdbl> p3_sampled(const ZakArray& A, const ZakArray& B) {
  if (A.n_z != B.n_z || A.n_x != B.n_x) throw std::invalid_argument("zak grids differ");
  std::vector<cdbl> p((size_t)A.n_z, 0.0);
  for (long k = 0; k < A.n_z; ++k) {
    cdbl acc = 0.0;
    for (long j = 0; j < A.n_x; ++j)
      acc += std::conj(A.h[(size_t)k][(size_t)j]) * B.h[(size_t)k][(size_t)j];
    p[(size_t)k] = acc / double(A.n_x);
  }
  return p;
}

std::vector<cdbl> ruelle_apply_sampled(const QmfFilter& f, const std::vector<cdbl>& xi) {
  long n = (long)xi.size();
  if (n % 2 != 0) throw std::invalid_argument("sampled transfer needs an even grid");
  auto m0 = m0_on_grid(f, n);
  std::vector<cdbl> out((size_t)(n / 2));
  for (long k = 0; k < n / 2; ++k) {
    out[(size_t)k] = 0.5 * (std::norm(m0[(size_t)k]) * xi[(size_t)k] +
                            std::norm(m0[(size_t)(k + n / 2)]) * xi[(size_t)(k + n / 2)]);
  }
  return out;
}

ZakArray zak_even_columns(const ZakArray& H) {
  require_grid(H);
  if (H.n_x % 2 != 0) throw std::invalid_argument("n_x must be even");
  ZakArray R = zak_zero(H.n_z, H.n_x / 2);
  for (long k = 0; k < H.n_z; ++k)
    for (long j = 0; j < R.n_x; ++j) R.h[(size_t)k][(size_t)j] = H.h[(size_t)k][(size_t)(2 * j)];
  return R;
}

double rel1_residual(const QmfFilter& f, const ZakArray& H, const LPolyF& alpha) {
  ZakArray lhs = zak_Mstar(f, zak_pi(alpha, zak_M(f, H)));
  ZakArray rhs = zak_even_columns(zak_pi(ruelle_adjoint(f, alpha), H));
  return zak_dist_max(lhs, rhs);
}

double rel2_residual(const QmfFilter& f, const ZakArray& H, const LPolyF& alpha) {
  ZakArray lhs = zak_M(f, zak_pi(alpha, zak_Mstar(f, H)));
  LPolyF e1a = alpha;
  e1a.lo += 1;
  ZakArray rhs = zak_even_columns(zak_add(
      zak_pi(ruelle_apply(f, alpha), H),
      zak_pi(ruelle_apply(f, e1a), zak_half_translate(H))));
  return zak_dist_max(lhs, rhs);
}

HarnessReport commutation_harness(const QmfFilter& f, int trials, long n_z, long n_x,
                                  std::uint64_t seed) {
  if (!is_pow2(n_z) || !is_pow2(n_x) || n_z < 4 || n_x < 4)
    throw std::invalid_argument("harness grids must be powers of two >= 4");
  HarnessReport rep;
  rep.n_z = n_z;
  rep.n_x = n_x;
  rep.trials = trials;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    ZakArray H = zak_zero(n_z, n_x);
    for (auto& row : H.h)
      for (auto& x : row) x = rng.cbox();
    LPolyF alpha;
    alpha.lo = -2;
    for (int i = 0; i < 5; ++i) alpha.c.push_back(rng.cbox());
    double r1 = rel1_residual(f, H, alpha);
    double r2 = rel2_residual(f, H, alpha);
    rep.rel1_max = std::max(rep.rel1_max, r1);
    rep.rel2_max = std::max(rep.rel2_max, r2);
    rep.rel1_mean += r1 / double(trials);
    rep.rel2_mean += r2 / double(trials);
  }
  return rep;
}

}  // namespace casclab
