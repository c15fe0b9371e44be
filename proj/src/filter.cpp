#include "casclab/filter.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace casclab {

using json = nlohmann::json;

LPoly QmfFilter::weight() const {
  // |m0|^2 = |mask|^2 / 2
  return scale(modulus_squared(mask), ExactScalar(Rat(1, 2)));
}

LPolyF QmfFilter::weightf() const {
  if (kind == Kind::laurent && exact) return to_float(weight());
  return scale(modulus_squared(maskf), std::complex<double>(0.5, 0.0));
}

std::complex<double> QmfFilter::m0_eval(std::complex<double> z) const {
  return eval(maskf, z) / std::sqrt(2.0);
}

double QmfFilter::m0_band(const Dyadic& omega_over_pi) const {
  return support.contains_dyadic(omega_over_pi) ? std::sqrt(2.0) : 0.0;
}

double QmfFilter::m0_band(const Rat& omega_over_pi) const {
  return support.contains(omega_over_pi) ? std::sqrt(2.0) : 0.0;
}

namespace {

AxiomCheck check_lowpass_laurent(const QmfFilter& f) {
  AxiomCheck c{"lowpass", false, 0.0, ""};
  if (f.exact) {
    ExactScalar s;
    for (auto& x : f.mask.c) s += x;
    ExactScalar r = s - ExactScalar(2);
    c.residual = std::abs(r.to_double());
    c.pass = r.is_zero();
  } else {
    std::complex<double> s = 0.0;
    for (auto& x : f.maskf.c) s += x;
    c.residual = std::abs(s - 2.0);
    c.pass = c.residual <= 1e-12;
  }
  return c;
}

AxiomCheck check_qmf_laurent(const QmfFilter& f) {
  AxiomCheck c{"qmf", false, 0.0, ""};
  long span = f.exact ? (f.mask.hi() - f.mask.lo) : (f.maskf.hi() - f.maskf.lo);
  bool exact_ok = true;
  double worst = 0.0;
  for (long k = -(span / 2 + 1); k <= span / 2 + 1; ++k) {
    if (f.exact) {
      ExactScalar s;
      for (long n = f.mask.lo; n <= f.mask.hi(); ++n) s += f.mask.at(n) * f.mask.at(n - 2 * k);
      if (k == 0) s -= ExactScalar(2);
      if (!s.is_zero()) exact_ok = false;
      worst = std::max(worst, std::abs(s.to_double()));
    } else {
      std::complex<double> s = 0.0;
      for (long n = f.maskf.lo; n <= f.maskf.hi(); ++n)
        s += f.maskf.at(n) * std::conj(f.maskf.at(n - 2 * k));
      if (k == 0) s -= 2.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  c.residual = worst;
  c.pass = f.exact ? exact_ok : worst <= 1e-12;
  return c;
}

AxiomCheck check_lowpass_band(const QmfFilter& f) {
  AxiomCheck c{"lowpass", false, 0.0, ""};
  // m0(1) = sqrt(2) needs an open neighborhood of omega = 0 inside the support
  IntervalSet near = unroll(f.support, Rat(-1), Rat(1));
  bool ok = false;
  for (auto& [a, b] : near.iv)
    if (a < 0 && 0 < b) ok = true;
  c.pass = ok;
  c.residual = ok ? 0.0 : 1.0;
  if (!ok) c.note = "no neighborhood of omega=0 in the support";
  return c;
}

AxiomCheck check_qmf_band(const QmfFilter& f) {
  AxiomCheck c{"qmf", false, 0.0, ""};
  // support and support+pi must tile the period up to measure zero
  PeriodicIntervalSet shifted = periodic(set_affine(f.support.base, Rat(1), Rat(1)), f.support.period);
  Rat overlap = set_intersect(f.support.base, shifted.base).measure();
  Rat defect = f.support.base.measure() + shifted.base.measure() - overlap - f.support.period;
  Rat total = (defect < 0 ? -defect : defect) + overlap;
  c.residual = rat_double(total);
  c.pass = total == 0;
  if (!c.pass) c.note = "tiling defect (measure in units of pi): " + rat_str(total);
  return c;
}

}  // namespace

ValidationReport validate(const QmfFilter& f) {
  ValidationReport r;
  r.filter_name = f.name;
  if (f.kind == QmfFilter::Kind::laurent) {
    r.checks.push_back(check_lowpass_laurent(f));
    r.checks.push_back(check_qmf_laurent(f));
    r.checks.push_back({"continuity", true, 0.0, "trigonometric polynomial, continuous everywhere"});
  } else {
    r.checks.push_back(check_lowpass_band(f));
    r.checks.push_back(check_qmf_band(f));
    r.checks.push_back({"continuity", true, 0.0,
                        "indicator filter: continuity at z=1 holds in the a.e. sense only"});
  }
  r.passed = true;
  for (auto& c : r.checks) r.passed = r.passed && c.pass;
  return r;
}

QmfFilter high_pass(const QmfFilter& f) {
  QmfFilter g;
  g.kind = f.kind;
  g.exact = f.exact;
  g.name = f.name + "#high";
  if (f.kind == QmfFilter::Kind::laurent) {
    if (f.exact) {
      LPoly m;
      m.lo = 1 - f.mask.hi();
      m.c.assign(f.mask.c.size(), ExactScalar());
      for (long n = m.lo; n <= 1 - f.mask.lo; ++n) {
        ExactScalar v = f.mask.at(1 - n);
        if ((1 - n) % 2 != 0) v = -v;  // (-1)^{1-n} = (-1)^{n-1}
        m.c[(size_t)(n - m.lo)] = v;
      }
      g.mask = trim(m);
      g.maskf = to_float(g.mask);
    } else {
      LPolyF m;
      m.lo = 1 - f.maskf.hi();
      m.c.assign(f.maskf.c.size(), {0.0, 0.0});
      for (long n = m.lo; n <= 1 - f.maskf.lo; ++n) {
        std::complex<double> v = std::conj(f.maskf.at(1 - n));
        if ((1 - n) % 2 != 0) v = -v;
        m.c[(size_t)(n - m.lo)] = v;
      }
      g.maskf = trim(m);
    }
  } else {
    g.support = periodic(set_affine(f.support.base, Rat(1), Rat(1)), f.support.period);
  }
  return g;
}

FilterProduct filter_product(const QmfFilter& f, int n, long degree_guard) {
  if (n < 1) throw std::invalid_argument("filter_product needs n >= 1");
  FilterProduct out;
  out.n = n;
  if (f.kind == QmfFilter::Kind::band) {
    out.band = true;
    PeriodicIntervalSet s = f.support;
    for (int k = 1; k < n; ++k) s = set_intersect_periodic(s, sigma_preimage(f.support, k));
    out.support = s;
    return out;
  }
  if (f.exact) {
    LPoly p = f.mask;
    for (int k = 1; k < n; ++k) {
      p = laurent_mul(p, upsample(f.mask, 1L << k));
      if (p.hi() - p.lo > degree_guard) throw std::length_error("filter_product degree guard");
    }
    out.poly = scale(p, ExactScalar::half_pow2(-n));  // mask product = 2^{n/2} m0^(n)
    out.polyf = to_float(out.poly);
  } else {
    LPolyF p = f.maskf;
    for (int k = 1; k < n; ++k) {
      p = laurent_mul(p, upsample(f.maskf, 1L << k));
      if (p.hi() - p.lo > degree_guard) throw std::length_error("filter_product degree guard");
    }
    out.polyf = scale(p, std::complex<double>(std::pow(2.0, -0.5 * n), 0.0));
  }
  return out;
}

double KernelDn::mean() const {
  if (band) return std::pow(2.0, n) * rat_double(support.base.measure() / support.period);
  if (!poly.is_zero()) return poly.at(0).to_double();
  return polyf.at(0).real();
}

KernelDn kernel_dn(const QmfFilter& f, int n) {
  FilterProduct p = filter_product(f, n);
  KernelDn d;
  d.n = n;
  d.band = p.band;
  if (p.band) {
    d.support = p.support;
  } else if (f.exact) {
    d.poly = modulus_squared(p.poly);
    d.polyf = to_float(d.poly);
  } else {
    d.polyf = modulus_squared(p.polyf);
  }
  return d;
}

PeriodicIntervalSet sigma_preimage(const PeriodicIntervalSet& s, int j) {
  PeriodicIntervalSet r = s;
  for (int t = 0; t < j; ++t) {
    r = periodic_affine(r, Rat(1, 2), Rat(0));  // halves the period
    r = lift_period(r, 2);
  }
  return r;
}

ZeroSet zero_set(const QmfFilter& f) {
  ZeroSet z;
  if (f.kind == QmfFilter::Kind::band) {
    PeriodicIntervalSet comp = periodic_complement(f.support);
    z.arcs = unroll(comp, Rat(-1), Rat(1));
    z.measure_zero = z.arcs.measure() == 0;
    return z;
  }
  z.measure_zero = true;
  // diagnostic root scan: |m0(e^{-i omega})|^2 minima refined by ternary search
  const long N = 1L << 14;
  auto val = [&](double w) {
    std::complex<double> m = f.m0_eval(std::polar(1.0, -w));
    return std::norm(m);
  };
  std::vector<double> vs((size_t)N);
  const double pi = std::numbers::pi;
  for (long j = 0; j < N; ++j) vs[(size_t)j] = val(-pi + 2 * pi * (double)j / (double)N);
  for (long j = 0; j < N; ++j) {
    double prev = vs[(size_t)((j + N - 1) % N)], cur = vs[(size_t)j],
           next = vs[(size_t)((j + 1) % N)];
    if (cur <= prev && cur <= next && cur < 1e-8) {
      double a = -pi + 2 * pi * (double)(j - 1) / (double)N;
      double b = -pi + 2 * pi * (double)(j + 1) / (double)N;
      for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        double u = a + (b - a) / 3, v = b - (b - a) / 3;
        if (val(u) < val(v)) b = v;
        else a = u;
      }
      double w = (a + b) / 2;
      if (val(w) < 1e-20) {
        if (w < -pi) w += 2 * pi;
        if (w >= pi) w -= 2 * pi;
        z.points.push_back(w);
      }
    }
  }
  return z;
}

namespace {

LPoly mask_from_pairs(long offset, const std::vector<std::pair<long long, long long>>& entries) {
  LPoly m;
  m.lo = offset;
  for (auto& [num, den] : entries) m.c.push_back(ExactScalar(rat(num, den)));
  return trim(m);
}

}  // namespace

QmfFilter make_haar() {
  QmfFilter f;
  f.kind = QmfFilter::Kind::laurent;
  f.exact = true;
  f.name = "haar";
  f.mask = mask_from_pairs(0, {{1, 1}, {1, 1}});
  f.maskf = to_float(f.mask);
  return f;
}

QmfFilter make_stretched_haar() {
  QmfFilter f;
  f.kind = QmfFilter::Kind::laurent;
  f.exact = true;
  f.name = "haar_stretch3";
  f.mask = mask_from_pairs(0, {{1, 1}, {0, 1}, {0, 1}, {1, 1}});
  f.maskf = to_float(f.mask);
  return f;
}

QmfFilter make_shannon() {
  QmfFilter f;
  f.kind = QmfFilter::Kind::band;
  f.name = "shannon";
  f.support = periodic(interval(rat(-1, 2), rat(1, 2)), Rat(2));
  return f;
}

QmfFilter make_daub4() {
  QmfFilter f;
  f.kind = QmfFilter::Kind::laurent;
  f.exact = false;
  f.name = "daubechies4";
  const double s3 = std::sqrt(3.0);
  f.maskf = laurent_from<std::complex<double>>(
      0, {{(1 + s3) / 4, 0}, {(3 + s3) / 4, 0}, {(3 - s3) / 4, 0}, {(1 - s3) / 4, 0}});
  return f;
}

QmfFilter make_perturbed_haar() {
  QmfFilter f;
  f.kind = QmfFilter::Kind::laurent;
  f.exact = true;
  f.name = "haar_perturbed";
  f.mask = mask_from_pairs(0, {{1, 1}, {11, 10}});
  f.maskf = to_float(f.mask);
  return f;
}

QmfFilter filter_from_json_text(const std::string& text, const std::string& fallback_name) {
  json j = json::parse(text);
  QmfFilter f;
  f.name = j.value("name", fallback_name);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "laurent") {
    f.kind = QmfFilter::Kind::laurent;
    std::string scalar = j.value("scalar", "exact");
    long offset = j.value("offset", 0L);
    if (scalar == "exact") {
      f.exact = true;
      std::vector<std::pair<long long, long long>> entries;
      for (auto& e : j.at("mask")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
          throw std::invalid_argument(
              "exact mask entries must be [num, den] integer pairs (floats rejected)");
        entries.push_back({e[0].get<long long>(), e[1].get<long long>()});
      }
      f.mask = mask_from_pairs(offset, entries);
      f.maskf = to_float(f.mask);
    } else if (scalar == "float") {
      f.exact = false;
      LPolyF m;
      m.lo = offset;
      for (auto& e : j.at("mask")) {
        if (!e.is_number()) throw std::invalid_argument("float mask entries must be numbers");
        m.c.push_back({e.get<double>(), 0.0});
      }
      f.maskf = trim(m);
    } else {
      throw std::invalid_argument("unknown scalar kind: " + scalar);
    }
  } else if (kind == "band") {
    f.kind = QmfFilter::Kind::band;
    auto& sup = j.at("support");
    if (!sup.is_array() || sup.size() % 2 != 0)
      throw std::invalid_argument("band support must list an even number of [num,den] endpoints");
    std::vector<std::pair<Rat, Rat>> ivs;
    for (size_t i = 0; i + 1 < sup.size(); i += 2) {
      auto ep = [&](const json& e) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
          throw std::invalid_argument("band endpoints must be [num, den] integer pairs");
        return rat(e[0].get<long long>(), e[1].get<long long>());
      };
      ivs.push_back({ep(sup[i]), ep(sup[i + 1])});
    }
    f.support = periodic(normalize(ivs), Rat(2));
  } else {
    throw std::invalid_argument("unknown filter kind: " + kind);
  }
  return f;
}

QmfFilter load_filter(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open filter file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
  if (auto p = stem.find_last_of('.'); p != std::string::npos) stem = stem.substr(0, p);
  return filter_from_json_text(ss.str(), stem);
}

}  // namespace casclab
