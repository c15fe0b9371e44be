#include "casclab/run.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casclab/acceptance.hpp"
#include "casclab/diagnostics.hpp"
#include "casclab/filter.hpp"
#include "casclab/fourier_grid.hpp"
#include "casclab/grid_fn.hpp"
#include "casclab/io.hpp"
#include "casclab/report_json.hpp"
#include "casclab/ruelle.hpp"
#include "casclab/wold.hpp"
#include "casclab/zak.hpp"

namespace casclab {

namespace {

constexpr double kHarnessTol = 1e-10;
constexpr double kModelTol = 1e-10;
constexpr double kFixedSpaceTol = 1e-10;
// Deeper traces double the ladder allocation per step; 16 keeps the Fourier
// path at 2^24 samples and the exact path within desk-scale coefficient counts.
constexpr int kMaxTraceIters = 16;

const std::vector<std::string> kTraceHeader = {"n", "norm_Mn_h", "norm_diff_phi",
                                               "p2_deviation", "inner_re"};

struct Out {
  std::string dir;  // empty: stdout only

  void json(const std::string& name, const ordered_json& j) {
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!dir.empty()) write_text_file(dir + "/" + name, text);
  }
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
    std::string text = csv_text(header, rows);
    if (dir.empty())
      std::cout << text;
    else
      write_text_file(dir + "/" + name, text);
  }
};

// Configuration problems (bad flags, unreadable files, unrepresentable
// requests) exit 2; tolerance misses exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

Rat parse_rat_arg(const std::string& s) {
  size_t slash = s.find('/');
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit((unsigned char)t[i])) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-' || Int(den) == 0)
    throw UsageError("rational argument must be 'n' or 'n/d': " + s);
  return Rat(Int(num), Int(den));
}

std::pair<long, long> parse_grid_arg(const std::string& s) {
  size_t comma = s.find(',');
  try {
    long a = std::stol(s.substr(0, comma));
    long b = (comma == std::string::npos) ? a : std::stol(s.substr(comma + 1));
    return {a, b};
  } catch (const std::exception&) {
    throw UsageError("grid argument must be 'N' or 'NZ,NX': " + s);
  }
}

ordered_json diagnose_json(const DiagnoseReport& r) {
  ordered_json j;
  j["hypothesis_ok"] = r.hypothesis_ok;
  if (!r.hypothesis_note.empty()) j["hypothesis_note"] = r.hypothesis_note;
  j["p_at_one"] = fmt_g17(r.p_at_one);
  j["cesaro_value"] = fmt_g17(r.cesaro_value);
  j["cesaro_window"] = r.cesaro_window;
  ordered_json trend = ordered_json::array();
  for (double v : r.norm_diff_sq) trend.push_back(fmt_g17(v));
  j["norm_diff_sq"] = trend;
  j["verdict"] = r.verdict;
  j["caveat"] = r.caveat;
  j["p_series"] = lpoly_json(r.p_series);
  return j;
}

bool is_shannon(const QmfFilter& f) {
  return f.kind == QmfFilter::Kind::band && f.support == make_shannon().support;
}

// Masks whose scaling function is exactly representable on the dyadic grid;
// everything else traces norms only (error columns print nan).
struct PhiModel {
  std::string name;
  GridFn phi;
};

std::optional<PhiModel> phi_model(const QmfFilter& f) {
  if (f.kind != QmfFilter::Kind::laurent || !f.exact) return std::nullopt;
  if (f.mask == make_haar().mask) {
    GridFn phi{0, 0, {ExactScalar(1)}};
    return PhiModel{"chi_[0,1)", phi};
  }
  if (f.mask == make_stretched_haar().mask) {
    ExactScalar third{Rat(Int(1), Int(3))};
    GridFn phi{0, 0, {third, third, third}};
    return PhiModel{"(1/3) chi_[0,3)", phi};
  }
  return std::nullopt;
}

GridFnF to_gridf(const GridFn& g) {
  GridFnF r;
  r.level = g.level;
  r.start = g.start;
  r.v.reserve(g.v.size());
  for (auto& x : g.v) r.v.push_back(ScalarOps<ExactScalar>::to_c(x));
  return r;
}

long obstruction_terms(const StartSpec& spec) {
  // Box/seq lattice values decay like 1/n, so the tail bound needs many
  // terms; gauss and fbox are effectively finite.
  switch (spec.kind) {
    case StartSpec::Kind::box:
    case StartSpec::Kind::seq:
      return 1000000;
    default:
      return 100;
  }
}

std::vector<std::vector<std::string>> trace_rows_exact(const QmfFilter& f, const GridFn& h0,
                                                       const std::optional<PhiModel>& phi,
                                                       int iters) {
  std::vector<std::vector<std::string>> rows;
  GridFn cur = h0;
  for (int n = 0;; ++n) {
    double nn = std::sqrt(norm_sq(cur).to_double());
    double p2dev = max_coeff_dist(p2(cur), laurent_one<ExactScalar>());
    double dphi = NAN, ip = NAN;
    if (phi) {
      dphi = std::sqrt(std::max(0.0, norm_sq(grid_sub(cur, phi->phi)).to_double()));
      ip = ScalarOps<ExactScalar>::to_c(inner(phi->phi, cur)).real();
    }
    rows.push_back({std::to_string(n), fmt_g17(nn), fmt_g17(dphi), fmt_g17(p2dev), fmt_g17(ip)});
    if (n == iters) break;
    cur = cascade_step(f, cur);
  }
  return rows;
}

std::vector<std::vector<std::string>> trace_rows_float(const QmfFilter& f, const GridFnF& h0,
                                                       int iters) {
  std::vector<std::vector<std::string>> rows;
  GridFnF cur = h0;
  for (int n = 0;; ++n) {
    double nn = std::sqrt(std::abs(norm_sq(cur).real()));
    double p2dev = max_coeff_dist(p2(cur), laurent_one<std::complex<double>>());
    rows.push_back({std::to_string(n), fmt_g17(nn), fmt_g17(NAN), fmt_g17(p2dev), fmt_g17(NAN)});
    if (n == iters) break;
    cur = cascade_step(f, cur);
  }
  return rows;
}

std::vector<std::vector<std::string>> trace_rows_band(const QmfFilter& f, FourierGridFn cur,
                                                      std::optional<FourierGridFn> phi,
                                                      int iters) {
  std::vector<std::vector<std::string>> rows;
  for (int n = 0;; ++n) {
    double n2 = fourier_norm_sq(cur);
    double p2dev = 0.0;
    for (double p : fourier_p2_sampled(cur)) p2dev = std::max(p2dev, std::abs(p - 1.0));
    double dphi = NAN, ip = NAN;
    if (phi) {
      double d2 = fourier_dist_sq(cur, *phi);
      dphi = std::sqrt(std::max(0.0, d2));
      ip = 0.5 * (n2 + fourier_norm_sq(*phi) - d2);  // Re<phi, h> by polarization
    }
    rows.push_back(
        {std::to_string(n), fmt_g17(std::sqrt(n2)), fmt_g17(dphi), fmt_g17(p2dev), fmt_g17(ip)});
    if (n == iters) break;
    cur = fourier_cascade_step(f, cur);
    if (phi) *phi = fourier_cascade_step(f, *phi);
  }
  return rows;
}

int cmd_validate(const std::string& filter_path, Out& out) {
  QmfFilter f = load_filter(filter_path);
  ValidationReport r = validate(f);
  out.json("validate_" + f.name + ".json", validation_json(r));
  return r.passed ? 0 : 1;
}

int cmd_cascade(const std::string& filter_path, const std::string& start, int iters, Out& out) {
  QmfFilter f = load_filter(filter_path);
  StartSpec spec = parse_start(start);

  ordered_json verdict;
  verdict["filter"] = f.name;
  verdict["start"] = start;
  if (iters > kMaxTraceIters) {
    verdict["note"] = "iters clamped to " + std::to_string(kMaxTraceIters) +
                      " (ladder allocation doubles per step)";
    iters = kMaxTraceIters;
  }
  if (iters < 0) iters = 0;
  verdict["iters"] = iters;

  if (f.kind == QmfFilter::Kind::band) {
    const int m = 7;
    long n_points = 1L << (iters + 8);
    FourierGridFn h0 = make_fourier(spec, m, n_points);
    std::optional<FourierGridFn> phi;
    if (is_shannon(f)) phi = make_fourier(parse_start("fbox:-1,1"), m, n_points);
    out.csv("cascade_trace.csv", kTraceHeader, trace_rows_band(f, h0, phi, iters));
    verdict["phi_model"] = phi ? ordered_json("fbox:-1,1") : ordered_json(nullptr);
    verdict["window"] = "[-128 pi, 128 pi), columns are window-truncated";
    if (phi) {
      FourierGridFn pd = make_fourier(parse_start("fbox:-1,1"), m, 4096);
      FourierGridFn fd = make_fourier(spec, m, 4096);
      verdict["diagnosis"] = diagnose_json(
          convergence_diagnose_fourier(f, pd, fd, std::min(iters, 8)));
    } else {
      verdict["diagnosis"] = "skipped: no scaling-function model for this band filter";
    }
  } else if (f.exact) {
    GridFn h0 = start_gridfn(spec);
    std::optional<PhiModel> phi = phi_model(f);
    out.csv("cascade_trace.csv", kTraceHeader, trace_rows_exact(f, h0, phi, iters));
    verdict["phi_model"] = phi ? ordered_json(phi->name) : ordered_json(nullptr);
    if (phi)
      verdict["diagnosis"] = diagnose_json(convergence_diagnose(f, phi->phi, h0, iters));
    else
      verdict["diagnosis"] = "skipped: no exact scaling-function model for this mask";
  } else {
    GridFnF h0 = to_gridf(start_gridfn(spec));
    out.csv("cascade_trace.csv", kTraceHeader, trace_rows_float(f, h0, iters));
    verdict["phi_model"] = nullptr;
    verdict["diagnosis"] = "skipped: diagnosis needs an exact mask or a band filter";
  }

  verdict["obstruction"] = obstruction_json(start, obstruction_sum(spec, obstruction_terms(spec)));
  out.json("cascade_verdict.json", verdict);
  return 0;
}

int cmd_ruelle(const std::string& filter_path, long degree, Out& out) {
  QmfFilter f = load_filter(filter_path);
  long N = degree;
  if (N < 0) {
    N = 4;
    if (f.kind == QmfFilter::Kind::laurent)
      N = std::max<long>(N, (long)f.maskf.c.size() - 1);
  }
  FixedSpace fs = fixed_space(f, N);
  SpectralScan sc = spectral_scan(f, N);

  ordered_json j;
  j["filter"] = f.name;
  j["N"] = N;
  j["exact"] = fs.exact;
  ordered_json fj;
  fj["dimension"] = fs.dimension();
  fj["max_residual"] = fmt_g17(fs.max_residual);
  ordered_json basis = ordered_json::array();
  if (fs.exact)
    for (auto& b : fs.basis) basis.push_back(lpoly_json(b));
  else
    for (auto& b : fs.basisf) basis.push_back(lpoly_json(b));
  fj["basis"] = basis;
  j["fixed_space"] = fj;

  ordered_json sj;
  sj["mult_one"] = sc.mult_one;
  sj["flagged"] = sc.flagged;
  sj["inconclusive"] = sc.inconclusive;
  ordered_json per = ordered_json::array();
  for (auto& e : sc.peripheral) {
    ordered_json ej;
    ej["lambda"] = cplx_json(e.lambda);
    ej["residual"] = fmt_g17(e.residual);
    ej["converged"] = e.converged;
    per.push_back(ej);
  }
  sj["peripheral"] = per;
  j["spectral_scan"] = sj;

  bool pass = fs.max_residual <= kFixedSpaceTol;
  j["tolerance"] = fmt_g17(kFixedSpaceTol);
  j["pass"] = pass;
  out.json("ruelle_report.json", j);
  return pass ? 0 : 1;
}

int cmd_zak(const std::string& filter_path, const std::string& grid, int trials,
            std::uint64_t seed, Out& out) {
  QmfFilter f = load_filter(filter_path);
  auto [n_z, n_x] = parse_grid_arg(grid);
  if (!is_pow2(n_z) || !is_pow2(n_x) || n_z < 4 || n_x < 4)
    throw UsageError("zak-harness grid sizes must be powers of two >= 4");
  HarnessReport r = commutation_harness(f, trials, n_z, n_x, seed);
  bool pass = r.rel1_max <= kHarnessTol && r.rel2_max <= kHarnessTol;

  ordered_json j;
  j["filter"] = f.name;
  j["n_z"] = r.n_z;
  j["n_x"] = r.n_x;
  j["trials"] = r.trials;
  j["seed"] = seed;
  j["rel1_max"] = fmt_g17(r.rel1_max);
  j["rel1_mean"] = fmt_g17(r.rel1_mean);
  j["rel2_max"] = fmt_g17(r.rel2_max);
  j["rel2_mean"] = fmt_g17(r.rel2_mean);
  j["tolerance"] = fmt_g17(kHarnessTol);
  j["pass"] = pass;
  out.json("zak_harness.json", j);
  return pass ? 0 : 1;
}

int cmd_wold(const std::string& filter_path, int kmax, const std::string& window, int iters,
             Out& out) {
  QmfFilter f = load_filter(filter_path);
  Rat W = parse_rat_arg(window);
  WoldSets w = wold_sets(f, kmax, W);

  ordered_json j;
  j["filter"] = f.name;
  j["k_max"] = w.k_max;
  j["window"] = rat_json(w.window);
  if (!w.note.empty()) j["note"] = w.note;
  j["E"] = periodic_set_json(w.E);
  ordered_json fjs = ordered_json::array();
  for (auto& s : w.F) fjs.push_back(periodic_set_json(s));
  j["F"] = fjs;
  ordered_json ejs = ordered_json::array();
  for (auto& s : w.Ek) ejs.push_back(periodic_set_json(s));
  j["Ek"] = ejs;
  j["E_inf_window"] = set_json(w.E_inf_window);

  // Tiling report on the window: E (= F_1), the difference layers, and the
  // residual must be pairwise disjoint and fill [-W, W) exactly.
  std::vector<IntervalSet> parts{unroll(w.E, -W, W)};
  for (auto& s : w.Ek) parts.push_back(unroll(s, -W, W));
  parts.push_back(w.E_inf_window);
  Rat covered(0);
  bool disjoint = true;
  for (size_t a = 0; a < parts.size(); ++a) {
    covered += parts[a].measure();
    for (size_t b = a + 1; b < parts.size(); ++b)
      if (!set_intersect(parts[a], parts[b]).empty()) disjoint = false;
  }
  Rat defect = 2 * W - covered;
  ordered_json tj;
  tj["window_measure"] = rat_json(2 * W);
  tj["covered_measure"] = rat_json(covered);
  tj["defect"] = rat_json(defect);
  tj["disjoint"] = disjoint;
  bool pass = (defect == 0) && disjoint;
  tj["pass"] = pass;
  j["tiling"] = tj;

  if (is_shannon(f)) {
    std::vector<std::vector<std::string>> rows;
    for (auto& r : shannon_experiment(iters))
      rows.push_back({std::to_string(r.n), fmt_g17(r.inf_diff), fmt_g17(r.B_norm),
                      fmt_g17(r.total)});
    out.csv("wold_shannon_trace.csv", {"n", "inf_diff", "B_norm", "total"}, rows);
    j["split_trace"] = "wold_shannon_trace.csv";
  } else if (f.kind == QmfFilter::Kind::band) {
    j["split_trace"] = "skipped: the split trace is implemented for the Shannon filter only";
  }

  out.json("wold_sets.json", j);
  return pass ? 0 : 1;
}

int cmd_model(const std::string& filter_path, int n_levels, const std::string& grid, int trials,
              std::uint64_t seed, Out& out) {
  QmfFilter f = load_filter(filter_path);
  long N = parse_grid_arg(grid).first;
  if (!is_pow2(N)) throw UsageError("model-check grid size must be a power of two");
  ModelReport r = abstract_model_check(f, n_levels, N, trials, seed);
  bool pass = r.adjoint_max <= kModelTol && r.rel_rstar_max <= kModelTol &&
              r.rel_shift_max <= kModelTol && r.kernel_max <= kModelTol &&
              r.wold_max <= kModelTol;

  ordered_json j;
  j["filter"] = f.name;
  j["N"] = r.N;
  j["n_levels"] = r.n_levels;
  j["trials"] = r.trials;
  j["seed"] = seed;
  j["adjoint_max"] = fmt_g17(r.adjoint_max);
  j["rel_rstar_max"] = fmt_g17(r.rel_rstar_max);
  j["rel_shift_max"] = fmt_g17(r.rel_shift_max);
  j["kernel_max"] = fmt_g17(r.kernel_max);
  j["wold_max"] = fmt_g17(r.wold_max);
  j["tolerance"] = fmt_g17(kModelTol);
  j["pass"] = pass;
  out.json("model_check.json", j);
  return pass ? 0 : 1;
}

}  // namespace

int thread_cap() {
  const char* s = std::getenv("CASCADE_LAB_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 1;
  return (int)std::min(v, 64L);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"laboratory for wavelet cascade and transfer-operator experiments"};
  app.require_subcommand(0, 1);

  std::string suite, out_dir;
  std::uint64_t seed = 0x5eed;
  app.add_option("--suite", suite, "named suite to run ('acceptance')");
  app.add_option("--out-dir", out_dir, "directory for artifacts (default: stdout only)");
  app.add_option("--seed", seed, "seed for random probes");

  struct Common {
    std::string filter, out_dir, start = "box:0,1", grid = "16,16", window = "16";
    int iters = 8, kmax = 3, trials = 50, n_levels = 6;
    long degree = -1;
    std::uint64_t seed = 0x5eed;
  } c;

  auto add_common = [&](CLI::App* sub, bool needs_filter = true) {
    auto* opt = sub->add_option("filter,--filter", c.filter, "filter definition JSON");
    if (needs_filter) opt->required();
    sub->add_option("--out-dir", c.out_dir, "directory for artifacts");
  };

  CLI::App* v_cmd = app.add_subcommand("validate", "check the filter axioms");
  add_common(v_cmd);

  CLI::App* casc = app.add_subcommand("cascade", "refinement trace and convergence verdict");
  add_common(casc);
  casc->add_option("--start", c.start, "start vector: haar|box:a,b|gauss:s|seq:c0,c1,..|fbox:a,b");
  casc->add_option("--iters", c.iters, "cascade steps (clamped to 16)");

  CLI::App* rue = app.add_subcommand("ruelle", "transfer-operator fixed space and spectrum scan");
  add_common(rue);
  rue->add_option("--degree", c.degree, "Laurent degree bound N (default: span of |m0|^2)");

  CLI::App* zak = app.add_subcommand("zak-harness", "commutation-relation residuals");
  add_common(zak);
  zak->add_option("--grid", c.grid, "NZ,NX sample grid (powers of two)");
  zak->add_option("--iters", c.trials, "random trials");
  zak->add_option("--seed", c.seed, "probe seed");

  CLI::App* wold = app.add_subcommand("wold", "shift/unitary splitting sets and Shannon trace");
  add_common(wold);
  wold->add_option("--kmax", c.kmax, "number of shift layers");
  wold->add_option("--window", c.window, "half-width W in pi units (rational, >= 2^{kmax+1})");
  wold->add_option("--iters", c.iters, "Shannon split-trace depth");

  CLI::App* model = app.add_subcommand("model-check", "abstract sub-isometry model residuals");
  add_common(model);
  model->add_option("--kmax", c.n_levels, "model levels");
  model->add_option("--grid", c.grid, "circle sample count N (power of two)");
  model->add_option("--iters", c.trials, "random trials");
  model->add_option("--seed", c.seed, "probe seed");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message; 0 for --help/--version
    return code == 0 ? 0 : 2;
  }

  try {
    Out out{c.out_dir};
    if (*v_cmd) return cmd_validate(c.filter, out);
    if (*casc) return cmd_cascade(c.filter, c.start, c.iters, out);
    if (*rue) return cmd_ruelle(c.filter, c.degree, out);
    if (*zak) return cmd_zak(c.filter, c.grid, c.trials, c.seed, out);
    if (*wold) return cmd_wold(c.filter, c.kmax, c.window, c.iters, out);
    if (*model) return cmd_model(c.filter, c.n_levels, c.grid, c.trials, c.seed, out);
    if (!suite.empty()) {
      if (suite != "acceptance") throw UsageError("unknown suite: " + suite);
      return run_acceptance(out_dir.empty() ? "acceptance_artifacts" : out_dir, seed) == 0 ? 0 : 1;
    }
    std::cerr << app.help();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace casclab
