#include "casclab/ruelle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "casclab/rng.hpp"

namespace casclab {

using cd = std::complex<double>;

namespace {

void require_laurent(const QmfFilter& f, const char* who) {
  if (f.kind != QmfFilter::Kind::laurent)
    throw std::invalid_argument(std::string(who) +
                                ": band filters have no Laurent coefficient action");
}

}  // namespace

LPoly ruelle_apply(const QmfFilter& f, const LPoly& xi) {
  require_laurent(f, "ruelle_apply");
  return downsample_even(laurent_mul(f.weight(), xi));
}

LPolyF ruelle_apply(const QmfFilter& f, const LPolyF& xi) {
  require_laurent(f, "ruelle_apply");
  return downsample_even(laurent_mul(f.weightf(), xi));
}

LPoly ruelle_adjoint(const QmfFilter& f, const LPoly& xi) {
  require_laurent(f, "ruelle_adjoint");
  return laurent_mul(f.weight(), upsample(xi, 2));
}

LPolyF ruelle_adjoint(const QmfFilter& f, const LPolyF& xi) {
  require_laurent(f, "ruelle_adjoint");
  return laurent_mul(f.weightf(), upsample(xi, 2));
}

TransferMatrix transfer_matrix(const QmfFilter& f, long N) {
  require_laurent(f, "transfer_matrix");
  TransferMatrix t;
  t.N = N;
  t.exact = f.exact;
  long d = 2 * N + 1;
  if (f.exact) {
    LPoly w = f.weight();
    if (N < std::max(std::labs(w.lo), w.hi()))
      throw std::invalid_argument("transfer_matrix: degree bound below |m0|^2 degree");
    t.a.assign((size_t)d, std::vector<ExactScalar>((size_t)d));
    for (long n = -N; n <= N; ++n)
      for (long k = -N; k <= N; ++k) t.a[(size_t)(n + N)][(size_t)(k + N)] = w.at(2 * n - k);
  }
  LPolyF wf = f.weightf();
  if (N < std::max(std::labs(wf.lo), wf.hi()))
    throw std::invalid_argument("transfer_matrix: degree bound below |m0|^2 degree");
  t.af.assign((size_t)d, std::vector<cd>((size_t)d));
  for (long n = -N; n <= N; ++n)
    for (long k = -N; k <= N; ++k) t.af[(size_t)(n + N)][(size_t)(k + N)] = wf.at(2 * n - k);
  return t;
}

CMatrix band_transfer_matrix(const QmfFilter& f, long N) {
  if (f.kind != QmfFilter::Kind::band)
    throw std::invalid_argument("band_transfer_matrix requires a band filter");
  long d = 2 * N + 1;
  long K = 1;
  int t = 0;
  while (K < 8 * d) K <<= 1, ++t;  // K = 2^t
  // B[i][q] = sum over the two square roots u of z_i of chi_S(u) u^{q-N};
  // the roots are u_i and u_{i+K} on the 2K-grid, u_j = e^{-i pi j / K}.
  CMatrix B((size_t)K, std::vector<cd>((size_t)d));
  const double pi = std::numbers::pi;
  for (long i = 0; i < K; ++i) {
    for (long j : {i, i + K}) {
      if (!f.support.contains_dyadic({j, -t})) continue;  // omega/pi = j/K
      for (long q = 0; q < d; ++q)
        B[(size_t)i][(size_t)q] += std::polar(1.0, -pi * (double)j * (double)(q - N) / (double)K);
    }
  }
  // Galerkin compression G = V^H B / K with V[i][p] = z_i^{p-N}.
  CMatrix G((size_t)d, std::vector<cd>((size_t)d));
  for (long p = 0; p < d; ++p)
    for (long i = 0; i < K; ++i) {
      cd vconj = std::polar(1.0, 2.0 * pi * (double)i * (double)(p - N) / (double)K);
      for (long q = 0; q < d; ++q) G[(size_t)p][(size_t)q] += vconj * B[(size_t)i][(size_t)q];
    }
  for (auto& row : G)
    for (auto& x : row) x /= (double)K;
  return G;
}

namespace {

// ---- exact nullspace via fraction-free (Bareiss) elimination ----

Int lcm_int(const Int& a, const Int& b) { return a / gcd(a, b) * b; }

// Clears denominators row-wise, then one-step Bareiss with row pivoting and
// zero-column skipping; the division by the previous pivot is exact (entries
// stay minors of the input, Sylvester's identity).
std::vector<std::vector<ExactScalar>> exact_nullspace(
    std::vector<std::vector<ExactScalar>> m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (auto& row : m) {
    Int L = 1;
    for (auto& x : row) {
      L = lcm_int(L, denominator(x.a));
      L = lcm_int(L, denominator(x.b));
    }
    ExactScalar s{Rat(L), Rat(0)};
    for (auto& x : row) x *= s;
  }
  ExactScalar prev(1);
  size_t r = 0;
  std::vector<std::pair<size_t, size_t>> pivots;
  std::vector<bool> is_pivot_col(cols, false);
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = ExactScalar();
    }
    prev = m[r][c];
    pivots.push_back({r, c});
    is_pivot_col[c] = true;
    ++r;
  }
  std::vector<std::vector<ExactScalar>> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot_col[fc]) continue;
    std::vector<ExactScalar> x(cols);
    x[fc] = ExactScalar(1);
    for (size_t t = pivots.size(); t-- > 0;) {
      auto [pr, pc] = pivots[t];
      ExactScalar s;
      for (size_t j = pc + 1; j < cols; ++j)
        if (!x[j].is_zero()) s += m[pr][j] * x[j];
      x[pc] = -s / m[pr][pc];
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

double inf_norm(const CMatrix& m) {
  double best = 0.0;
  for (auto& row : m) {
    double s = 0.0;
    for (auto& x : row) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

std::vector<cd> matvec(const CMatrix& m, const std::vector<cd>& v) {
  std::vector<cd> w(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    cd s = 0.0;
    for (size_t j = 0; j < v.size(); ++j) s += m[i][j] * v[j];
    w[i] = s;
  }
  return w;
}

cd dot_conj(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<cd>& v) { return std::sqrt(std::abs(dot_conj(v, v))); }

CMatrix adjoint(const CMatrix& m) {
  CMatrix a(m[0].size(), std::vector<cd>(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[0].size(); ++j) a[j][i] = std::conj(m[i][j]);
  return a;
}

struct PowerResult {
  cd lambda{0.0, 0.0};
  std::vector<cd> v;
  bool ok = false;
};

PowerResult power_iterate(const CMatrix& m, Rng& rng, double tol_abs, int max_iter) {
  size_t d = m.size();
  PowerResult r;
  r.v.resize(d);
  for (auto& x : r.v) x = rng.cbox();
  double n0 = norm2(r.v);
  for (auto& x : r.v) x /= n0;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<cd> w = matvec(m, r.v);
    cd lam = dot_conj(r.v, w);
    double res = 0.0;
    for (size_t i = 0; i < d; ++i) res += std::norm(w[i] - lam * r.v[i]);
    res = std::sqrt(res);
    if (res <= tol_abs) {
      r.lambda = lam;
      r.ok = true;
      return r;
    }
    double nw = norm2(w);
    if (nw <= tol_abs) {  // (numerically) nilpotent direction: lambda = 0
      r.lambda = 0.0;
      r.ok = true;
      return r;
    }
    for (size_t i = 0; i < d; ++i) r.v[i] = w[i] / nw;
  }
  return r;
}

}  // namespace

std::vector<std::vector<cd>> nullspace_float(CMatrix m, double tol) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<size_t> colperm(cols);
  std::iota(colperm.begin(), colperm.end(), (size_t)0);
  double scale = 0.0;
  for (auto& row : m)
    for (auto& x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  size_t rank = 0;
  for (size_t k = 0; k < std::min(rows, cols); ++k) {
    size_t bi = k, bj = k;
    double best = 0.0;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j)
        if (std::abs(m[i][j]) > best) best = std::abs(m[i][j]), bi = i, bj = j;
    if (best <= tol * scale) break;
    std::swap(m[k], m[bi]);
    if (bj != k) {
      for (auto& row : m) std::swap(row[k], row[bj]);
      std::swap(colperm[k], colperm[bj]);
    }
    for (size_t i = k + 1; i < rows; ++i) {
      cd fac = m[i][k] / m[k][k];
      m[i][k] = 0.0;
      if (fac == cd(0.0, 0.0)) continue;
      for (size_t j = k + 1; j < cols; ++j) m[i][j] -= fac * m[k][j];
    }
    ++rank;
  }
  std::vector<std::vector<cd>> basis;
  for (size_t fc = rank; fc < cols; ++fc) {
    std::vector<cd> xp(cols, cd(0.0, 0.0));
    xp[fc] = 1.0;
    for (size_t t = rank; t-- > 0;) {
      cd s = 0.0;
      for (size_t j = t + 1; j < cols; ++j) s += m[t][j] * xp[j];
      xp[t] = -s / m[t][t];
    }
    std::vector<cd> x(cols);
    for (size_t j = 0; j < cols; ++j) x[colperm[j]] = xp[j];
    size_t big = 0;
    for (size_t j = 1; j < cols; ++j)
      if (std::abs(x[j]) > std::abs(x[big])) big = j;
    cd phase = x[big] / std::abs(x[big]);
    double nn = norm2(x);
    for (auto& e : x) e /= phase * nn;  // largest entry real positive, unit norm
    basis.push_back(std::move(x));
  }
  return basis;
}

bool in_span(const std::vector<LPoly>& basis, const LPoly& target) {
  long lo = target.lo, hi = target.hi();
  for (auto& b : basis) {
    if (b.is_zero()) continue;
    lo = std::min(lo, b.lo);
    hi = std::max(hi, b.hi());
  }
  if (target.is_zero()) return true;
  size_t rows = (size_t)(hi - lo + 1), cols = basis.size();
  std::vector<std::vector<ExactScalar>> m(rows, std::vector<ExactScalar>(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) m[i][j] = basis[j].at(lo + (long)i);
    m[i][cols] = target.at(lo + (long)i);
  }
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      ExactScalar fac = m[i][c] / m[r][c];
      for (size_t j = c; j <= cols; ++j) m[i][j] = m[i][j] - fac * m[r][j];
    }
    ++r;
  }
  for (size_t i = 0; i < rows; ++i) {
    bool zero_row = true;
    for (size_t j = 0; j < cols; ++j) zero_row = zero_row && m[i][j].is_zero();
    if (zero_row && !m[i][cols].is_zero()) return false;
  }
  return true;
}

FixedSpace fixed_space(const QmfFilter& f, long N) {
  FixedSpace fs;
  fs.N = N;
  long d = 2 * N + 1;
  if (f.kind == QmfFilter::Kind::band) {
    fs.exact = false;
    CMatrix G = band_transfer_matrix(f, N);
    CMatrix M = G;
    for (long i = 0; i < d; ++i) M[(size_t)i][(size_t)i] -= 1.0;
    auto vecs = nullspace_float(std::move(M));
    for (auto& v : vecs) {
      std::vector<cd> Gv = matvec(G, v);
      for (size_t i = 0; i < v.size(); ++i)
        fs.max_residual = std::max(fs.max_residual, std::abs(Gv[i] - v[i]));
      LPolyF p;
      p.lo = -N;
      p.c = std::move(v);
      fs.basisf.push_back(trim(p));
    }
    return fs;
  }
  TransferMatrix t = transfer_matrix(f, N);
  if (f.exact) {
    fs.exact = true;
    auto m = t.a;
    for (long i = 0; i < d; ++i)
      m[(size_t)i][(size_t)i] = m[(size_t)i][(size_t)i] - ExactScalar(1);
    auto vecs = exact_nullspace(std::move(m));
    for (auto& v : vecs) {
      LPoly p;
      p.lo = -N;
      p.c = std::move(v);
      p = trim(p);
      if (!(ruelle_apply(f, p) == p))
        throw std::logic_error("exact fixed_space produced a non-fixed vector");
      fs.basis.push_back(std::move(p));
    }
    return fs;
  }
  fs.exact = false;
  CMatrix M = t.af;
  for (long i = 0; i < d; ++i) M[(size_t)i][(size_t)i] -= 1.0;
  auto vecs = nullspace_float(std::move(M));
  for (auto& v : vecs) {
    LPolyF p;
    p.lo = -N;
    p.c = std::move(v);
    p = trim(p);
    fs.max_residual = std::max(fs.max_residual, max_coeff_dist(ruelle_apply(f, p), p));
    fs.basisf.push_back(std::move(p));
  }
  return fs;
}

SpectralScan spectral_scan(const QmfFilter& f, long N) {
  SpectralScan sc;
  sc.N = N;
  CMatrix A = (f.kind == QmfFilter::Kind::band) ? band_transfer_matrix(f, N)
                                                : transfer_matrix(f, N).af;
  size_t d = A.size();
  double tol_abs = 1e-11 * std::max(1.0, inf_norm(A));
  const int max_iter = 50000;
  Rng rng(0x700d);
  CMatrix B = A;
  // Phase 1 pulls out lambda = 1 copies by iterating on B + I (shifting makes
  // lambda = 1 strictly dominant among unit-modulus eigenvalues); phase 2
  // scans the rest of the peripheral band with plain power iteration.
  bool phase1 = true;
  while ((int)sc.peripheral.size() < 8) {
    CMatrix M = B;
    if (phase1)
      for (size_t i = 0; i < d; ++i) M[i][i] += 1.0;
    PowerResult pr = power_iterate(M, rng, tol_abs, max_iter);
    cd lambda = phase1 ? pr.lambda - 1.0 : pr.lambda;
    if (phase1 && (!pr.ok || std::abs(lambda - 1.0) > 1e-8)) {
      phase1 = false;  // no lambda = 1 left; rescan with the unshifted matrix
      continue;
    }
    if (!phase1) {
      if (!pr.ok) {
        sc.inconclusive = true;
        break;
      }
      if (std::abs(lambda) < 1.0 - 1e-6) break;  // peripheral band exhausted
    }
    std::vector<cd> Av = matvec(A, pr.v);
    double res = 0.0;
    for (size_t i = 0; i < d; ++i) res += std::norm(Av[i] - lambda * pr.v[i]);
    sc.peripheral.push_back({lambda, std::sqrt(res), pr.ok});
    // Wielandt deflation: B <- B - lambda v u^H / (u^H v) with u a left
    // eigenvector; keeps the remaining eigenpairs intact.
    CMatrix Mh = adjoint(M);
    PowerResult pl = power_iterate(Mh, rng, tol_abs, max_iter);
    cd uv = dot_conj(pl.v, pr.v);
    if (!pl.ok || std::abs(uv) < 1e-8) {
      sc.inconclusive = true;
      break;
    }
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) B[i][j] -= lambda * pr.v[i] * std::conj(pl.v[j]) / uv;
  }
  for (auto& e : sc.peripheral) {
    if (std::abs(e.lambda - 1.0) <= 1e-8) ++sc.mult_one;
    else if (std::abs(e.lambda) >= 1.0 - 1e-6) sc.flagged = true;
  }
  return sc;
}

std::vector<ExactScalar> meyer_paiva_limit(const QmfFilter& f, const LPoly& f0, int n_max) {
  require_laurent(f, "meyer_paiva_limit");
  std::vector<ExactScalar> out;
  LPoly xi = f0;
  for (int n = 1; n <= n_max; ++n) {
    xi = ruelle_apply(f, xi);
    out.push_back(xi.at(0));
  }
  return out;
}

std::vector<double> meyer_paiva_limit(const QmfFilter& f, const LPolyF& f0, int n_max) {
  require_laurent(f, "meyer_paiva_limit");
  std::vector<double> out;
  LPolyF xi = f0;
  for (int n = 1; n <= n_max; ++n) {
    xi = ruelle_apply(f, xi);
    out.push_back(xi.at(0).real());
  }
  return out;
}

}  // namespace casclab
