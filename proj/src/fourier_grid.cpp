#include "casclab/fourier_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casclab {
namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }
bool is_pow2(const Int& n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(long n) {
  if (!is_pow2(n)) throw std::invalid_argument("grid size must be a power of two");
  int t = 0;
  while ((1L << t) < n) ++t;
  return t;
}

// (1 - e^{-i theta}) / (i theta) = e^{-i theta/2} sin(theta/2)/(theta/2),
// extended by 1 at theta = 0.  This form has no cancellation near 0.
std::complex<double> box_factor(double theta) {
  double h = 0.5 * theta;
  double r = h == 0.0 ? 1.0 : std::sin(h) / h;
  return r * std::complex<double>(std::cos(h), -std::sin(h));
}

GridFnF grid_to_float(const GridFn& g) {
  GridFnF r;
  r.level = g.level;
  r.start = g.start;
  r.v.reserve(g.v.size());
  for (auto& x : g.v) r.v.push_back(x.to_double());
  return r;
}

// Smallest e >= 0 with x * 2^e integral; throws if the denominator has an odd factor.
int dyadic_exp(const Rat& x) {
  Int d = boost::multiprecision::denominator(x);
  if (!is_pow2(d)) throw std::invalid_argument("endpoint is not a dyadic rational");
  return (int)boost::multiprecision::msb(d);
}

Rat parse_rat_token(std::string t) {
  auto strip = [](std::string& s) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
  };
  strip(t);
  if (t.empty()) throw std::invalid_argument("empty numeric token");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Int num(t.substr(0, slash)), den(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + t);
    return Rat(num, den);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if (ip.empty() || ip == "-") ip += '0';
    Int den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    return Rat(Int(ip + fp), den);
  }
  return Rat(Int(t));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    auto c = s.find(',', pos);
    if (c == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, c - pos));
    pos = c + 1;
  }
  return out;
}

}  // namespace

Dyadic FourierGridFn::omega_over_pi(long j) const {
  int p = log2_exact(n);
  return Dyadic{2 * j - n, m - p};
}

double fourier_norm_sq(const FourierGridFn& f) {
  double s = 0.0;
  for (auto& x : f.v) s += std::norm(x);
  return std::ldexp(1.0, f.m) / double(f.n) * s;
}

double fourier_dist_sq(const FourierGridFn& f, const FourierGridFn& g) {
  if (f.m != g.m || f.n != g.n) throw std::invalid_argument("fourier grids differ");
  double s = 0.0;
  for (long j = 0; j < f.n; ++j) s += std::norm(f.v[(size_t)j] - g.v[(size_t)j]);
  return std::ldexp(1.0, f.m) / double(f.n) * s;
}

StartSpec parse_start(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon == std::string::npos ? text.size() : colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  StartSpec s;
  if (head == "haar") {
    s.kind = StartSpec::Kind::box;
    s.a = 0;
    s.b = 1;
    return s;
  }
  if (head == "box" || head == "fbox") {
    s.kind = head == "box" ? StartSpec::Kind::box : StartSpec::Kind::fbox;
    auto parts = split_commas(rest);
    if (parts.size() != 2) throw std::invalid_argument("expected " + head + ":a,b");
    s.a = parse_rat_token(parts[0]);
    s.b = parse_rat_token(parts[1]);
    if (!(s.a < s.b)) throw std::invalid_argument("start interval is empty");
    return s;
  }
  if (head == "gauss") {
    s.kind = StartSpec::Kind::gauss;
    s.s = std::stod(rest);
    if (!(s.s > 0)) throw std::invalid_argument("gauss width must be positive");
    return s;
  }
  if (head == "seq") {
    s.kind = StartSpec::Kind::seq;
    if (!rest.empty() && rest.front() == '[') {
      if (rest.back() != ']') throw std::invalid_argument("unbalanced brackets in " + text);
      rest = rest.substr(1, rest.size() - 2);
    }
    for (auto& tok : split_commas(rest)) s.seq.push_back(parse_rat_token(tok));
    if (s.seq.empty()) throw std::invalid_argument("empty seq start");
    return s;
  }
  throw std::invalid_argument("unknown start spec: " + text);
}

GridFn start_gridfn(const StartSpec& spec) {
  if (spec.kind == StartSpec::Kind::seq) {
    GridFn g;
    g.level = 0;
    g.start = spec.seq_lo;
    for (auto& r : spec.seq) g.v.push_back(ExactScalar(r));
    return trim_grid(std::move(g));
  }
  if (spec.kind != StartSpec::Kind::box)
    throw std::invalid_argument("start has no exact grid representation; use the Fourier path");
  int J = std::max(dyadic_exp(spec.a), dyadic_exp(spec.b));
  Rat w = spec.b - spec.a;
  Int num = boost::multiprecision::numerator(w), den = boost::multiprecision::denominator(w);
  if (!is_pow2(num) || !is_pow2(den))
    throw std::invalid_argument("box width must be a power of two for exact normalization");
  int t = (int)boost::multiprecision::msb(num) - (int)boost::multiprecision::msb(den);
  // Unit L2 norm: value (b-a)^{-1/2} = 2^{-t/2} on each cell.
  ExactScalar amp = ExactScalar::half_pow2(-t);
  GridFn g;
  g.level = J;
  g.start = int_ll(boost::multiprecision::numerator(Rat(spec.a * pow2_rat(J))));
  long cells = int_ll(boost::multiprecision::numerator(Rat(w * pow2_rat(J))));
  g.v.assign((size_t)cells, amp);
  return g;
}

std::complex<double> gridfn_hat(const GridFnF& g, double omega) {
  if (g.v.empty()) return 0.0;
  double d = std::ldexp(1.0, -g.level);
  double theta = omega * d;
  std::complex<double> z = std::polar(1.0, -theta);
  std::complex<double> q = 0.0;
  for (size_t k = g.v.size(); k-- > 0;) q = q * z + g.v[k];
  return d * box_factor(theta) * std::polar(1.0, -theta * double(g.start)) * q;
}

std::complex<double> gridfn_hat(const GridFn& g, double omega) {
  return gridfn_hat(grid_to_float(g), omega);
}

std::complex<double> start_fourier_eval(const StartSpec& spec, double omega) {
  switch (spec.kind) {
    case StartSpec::Kind::box: {
      double w = rat_double(spec.b - spec.a);
      double c = 0.5 * rat_double(spec.a + spec.b);
      double amp = 1.0 / std::sqrt(w);
      double h = 0.5 * omega * w;
      double r = h == 0.0 ? 1.0 : std::sin(h) / h;
      return amp * w * r * std::polar(1.0, -omega * c);
    }
    case StartSpec::Kind::gauss: {
      // L2-normalized width-s Gaussian: |hat h|^2 = 2 s sqrt(pi) e^{-s^2 omega^2}.
      double s = spec.s;
      return std::sqrt(2.0 * s * std::sqrt(kPi)) * std::exp(-0.5 * s * s * omega * omega);
    }
    case StartSpec::Kind::seq: {
      GridFnF g;
      g.level = 0;
      g.start = spec.seq_lo;
      for (auto& r : spec.seq) g.v.push_back(rat_double(r));
      return gridfn_hat(g, omega);
    }
    case StartSpec::Kind::fbox: {
      double ap = rat_double(spec.a) * kPi, bp = rat_double(spec.b) * kPi;
      double amp = std::sqrt(2.0 / rat_double(spec.b - spec.a));
      return (omega >= ap && omega < bp) ? amp : 0.0;
    }
  }
  throw std::logic_error("unreachable");
}

FourierGridFn make_fourier(const StartSpec& spec, int m, long n) {
  if (n < 2) throw std::invalid_argument("fourier grid too small");
  FourierGridFn f;
  f.m = m;
  f.n = n;
  f.v.resize((size_t)n);
  switch (spec.kind) {
    case StartSpec::Kind::fbox: {
      // Exact half-open membership at the rational grid points.
      double amp = std::sqrt(2.0 / rat_double(spec.b - spec.a));
      for (long j = 0; j < n; ++j) {
        Rat t = Rat(Int(2 * j - n) * boost::multiprecision::numerator(pow2_rat(m)),
                    Int(n) * boost::multiprecision::denominator(pow2_rat(m)));
        f.v[(size_t)j] = (spec.a <= t && t < spec.b) ? amp : 0.0;
      }
      return f;
    }
    case StartSpec::Kind::box: {
      // rational -> double conversions hoisted; grids run to 2^26 points
      double w = rat_double(spec.b - spec.a);
      double c = 0.5 * rat_double(spec.a + spec.b);
      double amp = 1.0 / std::sqrt(w);
      for (long j = 0; j < n; ++j) {
        double omega = f.omega(j);
        double h = 0.5 * omega * w;
        double r = h == 0.0 ? 1.0 : std::sin(h) / h;
        f.v[(size_t)j] = amp * w * r * std::polar(1.0, -omega * c);
      }
      return f;
    }
    case StartSpec::Kind::gauss: {
      double s = spec.s;
      double amp = std::sqrt(2.0 * s * std::sqrt(kPi));
      for (long j = 0; j < n; ++j) {
        double omega = f.omega(j);
        f.v[(size_t)j] = amp * std::exp(-0.5 * s * s * omega * omega);
      }
      return f;
    }
    case StartSpec::Kind::seq: {
      GridFnF g;
      g.level = 0;
      g.start = spec.seq_lo;
      for (auto& r : spec.seq) g.v.push_back(rat_double(r));
      for (long j = 0; j < n; ++j) f.v[(size_t)j] = gridfn_hat(g, f.omega(j));
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

FourierGridFn fourier_cascade_step(const QmfFilter& f, const FourierGridFn& in) {
  if (f.kind != QmfFilter::Kind::band)
    throw std::invalid_argument("fourier_cascade_step needs a band filter");
  if (in.n < 8 || in.n % 4 != 0)
    throw std::runtime_error("fourier grid resolution ladder exhausted");
  int p = log2_exact(in.n);
  FourierGridFn out;
  out.m = in.m;
  out.n = in.n / 2;
  out.v.assign((size_t)out.n, 0.0);
  // (Mh)^(w) = 2^{-1/2} m0(w/2) h^(w/2); for a band filter 2^{-1/2} m0 is the
  // support indicator, so the step is a masked re-index: w_j/2 sits at input
  // sample j + n/4, and w_j/2 over pi is the dyadic (4j-n) 2^{m-1-p}.
  if (p > in.m) {
    // membership is exactly periodic in j: 4 * 2^{p-m} steps advance w/2 by
    // 2 pi, one full period of the support — evaluate one period, then tile
    long per = 1L << (p - in.m);
    std::vector<char> mem((size_t)per);
    for (long j = 0; j < per; ++j)
      mem[(size_t)j] = f.support.contains_dyadic(Dyadic{4 * j - in.n, in.m - 1 - p}) ? 1 : 0;
    for (long j = 0; j < out.n; ++j) {
      if (mem[(size_t)(j & (per - 1))]) out.v[(size_t)j] = in.v[(size_t)(j + in.n / 4)];
    }
    return out;
  }
  for (long j = 0; j < out.n; ++j) {
    if (f.support.contains_dyadic(Dyadic{4 * j - in.n, in.m - 1 - p}))
      out.v[(size_t)j] = in.v[(size_t)(j + in.n / 4)];
  }
  return out;
}

FourierGridFn fourier_mask(const FourierGridFn& f, const PeriodicIntervalSet& s) {
  int p = log2_exact(f.n);
  FourierGridFn out = f;
  for (long j = 0; j < f.n; ++j) {
    if (!s.contains_dyadic(Dyadic{2 * j - f.n, f.m - p})) out.v[(size_t)j] = 0.0;
  }
  return out;
}

FourierGridFn fourier_mask(const FourierGridFn& f, const IntervalSet& s) {
  int p = log2_exact(f.n);
  FourierGridFn out = f;
  for (long j = 0; j < f.n; ++j) {
    if (!s.contains_dyadic(Dyadic{2 * j - f.n, f.m - p})) out.v[(size_t)j] = 0.0;
  }
  return out;
}

std::vector<double> fourier_p2_sampled(const FourierGridFn& f) {
  long per = 1L << (f.m + 1);
  if (f.n % per != 0) throw std::invalid_argument("grid does not subdivide 2 pi");
  long stride = f.n >> f.m;          // samples per 2 pi
  long j0 = (f.n - stride) / 2;      // index of omega = -pi
  std::vector<double> out((size_t)stride, 0.0);
  for (long j = 0; j < f.n; ++j) {
    long i = ((j - j0) % stride + stride) % stride;
    out[(size_t)i] += std::norm(f.v[(size_t)j]);
  }
  return out;
}

std::vector<std::complex<double>> fourier_p1_sampled(const FourierGridFn& f,
                                                     const FourierGridFn& g) {
  if (f.m != g.m || f.n != g.n) throw std::invalid_argument("fourier grids differ");
  long per = 1L << (f.m + 1);
  if (f.n % per != 0) throw std::invalid_argument("grid does not subdivide 2 pi");
  long stride = f.n >> f.m;
  long j0 = (f.n - stride) / 2;
  std::vector<std::complex<double>> out((size_t)stride, 0.0);
  for (long j = 0; j < f.n; ++j) {
    long i = ((j - j0) % stride + stride) % stride;
    out[(size_t)i] += std::conj(f.v[(size_t)j]) * g.v[(size_t)j];
  }
  return out;
}

LPolyF fourier_correlation(const FourierGridFn& f, const FourierGridFn& g, long kmax) {
  if (f.m != g.m || f.n != g.n) throw std::invalid_argument("fourier grids differ");
  LPolyF p;
  p.lo = -kmax;
  p.c.assign((size_t)(2 * kmax + 1), 0.0);
  double scale = std::ldexp(1.0, f.m) / double(f.n) / (2.0 * kPi);
  for (long j = 0; j < f.n; ++j) {
    std::complex<double> w = std::conj(f.v[(size_t)j]) * g.v[(size_t)j];
    if (w == 0.0) continue;
    double om = f.omega(j);
    for (long k = -kmax; k <= kmax; ++k)
      p.c[(size_t)(k + kmax)] += w * std::polar(1.0, om * double(k));
  }
  // (1/2pi) * sum * d omega; d omega = 2^{m+1} pi / n.
  for (auto& x : p.c) x *= scale * 2.0 * kPi;
  return trim(std::move(p));
}

ObstructionReport obstruction_sum(const StartSpec& spec, long n_max) {
  ObstructionReport rep;
  rep.n_max = n_max;
  switch (spec.kind) {
    case StartSpec::Kind::box: {
      Rat w = spec.b - spec.a;
      Int num = boost::multiprecision::numerator(w);
      Int den = boost::multiprecision::denominator(w);
      if (den == 1) {  // integer width: sin(pi n w) = 0 for every n
        rep.exact_zero = true;
        rep.verdict = "zero_exact";
        return rep;
      }
      double amp2 = 1.0 / rat_double(w);
      Int two_den = 2 * den;
      double sum = 0.0;
      for (long n = 1; n <= n_max; ++n) {
        // Reduce n*w mod 2 exactly before taking sin: no phase loss at large n.
        Rat red((Int(n) * num) % two_den, den);
        double sv = std::sin(kPi * rat_double(red));
        double term = amp2 * sv * sv / (kPi * kPi * double(n) * double(n));
        if (n == 1) rep.first_term = term;
        sum += 2.0 * term;
      }
      rep.partial = sum;
      rep.tail = 2.0 * amp2 / (kPi * kPi * double(n_max));
      break;
    }
    case StartSpec::Kind::gauss: {
      double s = spec.s, c = 2.0 * s * std::sqrt(kPi);
      double sum = 0.0;
      for (long n = 1; n <= n_max; ++n) {
        double term = c * std::exp(-4.0 * kPi * kPi * s * s * double(n) * double(n));
        if (n == 1) rep.first_term = term;
        sum += 2.0 * term;
        if (term < 1e-300) break;
      }
      rep.partial = sum;
      // n^2 >= (N+1)^2 + 2(N+1)(n-N-1) for n > N gives a geometric majorant.
      double nn = double(n_max + 1);
      double head = c * std::exp(-4.0 * kPi * kPi * s * s * nn * nn);
      double ratio = std::exp(-8.0 * kPi * kPi * s * s * nn);
      rep.tail = 2.0 * head / (1.0 - ratio);
      break;
    }
    case StartSpec::Kind::seq: {
      // Integer-aligned unit cells: hat h(2 pi n) = box_hat(2 pi n) Q(1) = 0 exactly.
      rep.exact_zero = true;
      rep.verdict = "zero_exact";
      return rep;
    }
    case StartSpec::Kind::fbox: {
      double amp2 = 2.0 / rat_double(spec.b - spec.a);
      long lo = (long)int_ll(rat_floor(spec.a / 2));
      long hi = (long)int_ll(rat_floor(spec.b / 2)) + 1;
      for (long n = lo; n <= hi; ++n) {
        if (n == 0 || std::labs(n) > n_max) continue;
        Rat t = Rat(2 * n);
        if (spec.a <= t && t < spec.b) {
          if (rep.first_term == 0.0) rep.first_term = amp2;
          rep.partial += amp2;
        }
      }
      rep.tail = 0.0;  // compact frequency support: the sum is finite and complete
      break;
    }
  }
  rep.verdict = (rep.partial - rep.tail > 1e-9) ? "obstructed" : "below_significance";
  return rep;
}

ObstructionReport obstruction_sum(const FourierGridFn& f) {
  long per = 1L << (f.m + 1);
  if (f.n % per != 0) throw std::invalid_argument("grid does not subdivide 2 pi");
  long step = f.n / per;  // index distance between consecutive lattice points 2 pi n
  ObstructionReport rep;
  long half = f.m >= 1 ? (1L << (f.m - 1)) : 0;  // 2 pi n in window iff |n| < 2^{m-1}
  for (long n = -half; n < half; ++n) {
    if (n == 0) continue;
    double term = std::norm(f.v[(size_t)(f.n / 2 + n * step)]);
    if (std::labs(n) == 1 && rep.first_term == 0.0) rep.first_term = term;
    rep.partial += term;
    rep.n_max = std::max(rep.n_max, std::labs(n));
  }
  rep.tail = 0.0;  // window-truncated: exact for band-limited data
  rep.verdict = (rep.partial - rep.tail > 1e-9) ? "obstructed" : "below_significance";
  return rep;
}

P1CheckReport p1_fourier_check(const GridFn& h1, const GridFn& h2, long terms, long samples) {
  if (samples < 2 || samples % 2 != 0)
    throw std::invalid_argument("samples must be even and >= 2");
  if (terms < 1) throw std::invalid_argument("terms must be >= 1");
  int J = std::max(h1.level, h2.level);
  GridFnF a = grid_to_float(refine_to(h1, J));
  GridFnF b = grid_to_float(refine_to(h2, J));
  long M = 1L << J;
  // |hat h|-free factorization on the unit circle: with P_i(z) = sum v_k z^{start+k},
  // conj(hat h1) hat h2 (w) = |box_factor|^2-type kernel * G(e^{-i w / M}),
  // G = conj_reflect(P1) * P2.
  LPolyF P1{a.start, a.v}, P2{b.start, b.v};
  LPolyF G = laurent_mul(conj_reflect(P1), P2);
  LPolyF p2poly = to_float(correlation(h1, h2));

  P1CheckReport rep;
  rep.terms = terms;
  rep.samples = samples;
  for (long i = 0; i < samples; ++i) {
    double om = -kPi + 2.0 * kPi * (double(i) + 0.5) / double(samples);
    // Route A: literal truncated periodization through gridfn_hat.
    std::complex<double> raw = 0.0;
    for (long s = -terms; s <= terms; ++s) {
      double w = om + 2.0 * kPi * double(s);
      raw += std::conj(gridfn_hat(a, w)) * gridfn_hat(b, w);
    }
    // Exact tail: residue class r has lattice sum C_r / (4 M^2 sin^2(theta_r/2))
    // with C_r = 4 sin^2(theta_r/2) G(e^{-i theta_r}), i.e. G(e^{-i theta_r})/M^2
    // in total; subtract what the raw loop already covered.
    std::complex<double> corr = 0.0;
    for (long r = 0; r < M; ++r) {
      double theta = (om + 2.0 * kPi * double(r)) / double(M);
      std::complex<double> g = eval(G, std::polar(1.0, -theta));
      double sh = std::sin(0.5 * theta);
      double persum = 0.0;
      // t with |r + M t| <= terms
      long tlo = (long)std::ceil(double(-terms - r) / double(M));
      long thi = (long)std::floor(double(terms - r) / double(M));
      for (long t = tlo; t <= thi; ++t) {
        double u = om + 2.0 * kPi * (double(r) + double(M) * double(t));
        persum += 1.0 / (u * u);
      }
      corr += g / double(M * M) - 4.0 * sh * sh * g * persum;
    }
    std::complex<double> corrected = raw + corr;
    std::complex<double> ref = eval(p2poly, std::polar(1.0, -om));
    rep.max_deviation = std::max(rep.max_deviation, std::abs(corrected - ref));
    rep.raw_truncation = std::max(rep.raw_truncation, std::abs(corr));
  }
  return rep;
}

P1CheckReport p1_fourier_check(const FourierGridFn& f, const FourierGridFn& g) {
  auto p1 = fourier_p1_sampled(f, g);
  long stride = (long)p1.size();
  long kmax = std::min<long>(stride / 2, 256);
  LPolyF p = fourier_correlation(f, g, kmax);
  P1CheckReport rep;
  rep.terms = f.n / stride;
  rep.samples = stride;
  for (long i = 0; i < stride; ++i) {
    double om = -kPi + 2.0 * kPi * double(i) / double(stride);
    std::complex<double> ref = eval(p, std::polar(1.0, -om));
    rep.max_deviation = std::max(rep.max_deviation, std::abs(p1[(size_t)i] - ref));
  }
  return rep;
}

}  // namespace casclab
