#include "zlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "zlab/arith.hpp"
#include "zlab/errors.hpp"
#include "zlab/explicit_formula.hpp"
#include "zlab/hardy.hpp"
#include "zlab/mellin.hpp"
#include "zlab/moments.hpp"

namespace zlab {
namespace {

// Sample in [lo, hi) from the top 53 bits, independent of the standard
// library's distribution implementations.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Report bound_report(const std::string& name, double measured, double bound) {
  Report r;
  r.name = name;
  r.lhs = measured;
  r.rhs = bound;
  r.set_gap();
  r.passed = measured <= bound;
  return r;
}

// --- 1 ---------------------------------------------------------------------

SuiteReport functional_equation(const RunConfig& cfg) {
  SuiteReport out{"functional_equation", {}};
  constexpr int kPoints = 100;
  std::mt19937_64 rng(cfg.seed);

  double worst_chi = 0.0;
  Complex worst_chi_s;
  for (int i = 0; i < kPoints; ++i) {
    const Complex s(uniform(rng, -3.0, 4.0), uniform(rng, -300.0, 300.0));
    const double d = std::abs(chi(s).value * chi(1.0 - s).value - 1.0);
    if (d > worst_chi) {
      worst_chi = d;
      worst_chi_s = s;
    }
  }
  Report a = bound_report("chi_reflection", worst_chi, 1e-9);
  a.param("points", kPoints).param("worst_s_re", worst_chi_s.real()).param("worst_s_im", worst_chi_s.imag());
  a.param("seed", static_cast<double>(cfg.seed));
  out.reports.push_back(a);

  ZetaOptions zo;
  zo.tol = cfg.tol_z;
  double worst_fe = 0.0;
  double worst_bound = 0.0;
  Complex worst_fe_s;
  for (int i = 0; i < kPoints; ++i) {
    const Complex s(uniform(rng, -1.0, 2.0), uniform(rng, -100.0, 100.0));
    const ZetaValue z = zeta_em(s, zo);
    const ZetaValue zr = zeta_em(1.0 - s, zo);
    const double d = std::abs(z.value - chi(s).value * zr.value) / std::abs(z.value);
    if (d > worst_fe) {
      worst_fe = d;
      worst_fe_s = s;
      worst_bound = (z.error_bound + std::abs(chi(s).value) * zr.error_bound) / std::abs(z.value);
    }
  }
  Report b = bound_report("zeta_functional_equation", worst_fe, 1e-8);
  b.cert("euler_maclaurin_at_worst", worst_bound);
  b.param("points", kPoints).param("worst_s_re", worst_fe_s.real()).param("worst_s_im", worst_fe_s.imag());
  b.param("seed", static_cast<double>(cfg.seed));
  out.reports.push_back(b);
  return out;
}

// --- 2 ---------------------------------------------------------------------

SuiteReport z_cross(const RunConfig&) {
  SuiteReport out{"z_cross", {}};
  const std::vector<double> ts = {50.0, 100.0, 500.0, 1000.0, 5000.0};
  std::vector<double> lx, ly;
  double worst = 0.0;
  for (double t : ts) {
    const ZSample rs = z_rs(t, 3);
    const ZSample oracle = z_oracle_sample(t);
    Report r;
    r.name = "z_rs_vs_oracle";
    r.lhs = rs.value;
    r.rhs = oracle.value;
    r.set_gap();
    r.passed = r.gap_abs <= 1e-3;
    r.cert("rs_error_model", rs.err_est).cert("oracle_bound", oracle.err_est);
    r.param("t", t).param("corrections", 3);
    out.reports.push_back(r);
    worst = std::max(worst, r.gap_abs);
    lx.push_back(std::log(t));
    ly.push_back(std::log(std::max(r.gap_abs, 1e-300)));
  }
  // Least-squares slope of log error against log t.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  out.reports.push_back(bound_report("z_max_error", worst, 1e-3));
  out.reports.push_back(bound_report("z_error_loglog_slope", sxy / sxx, -1.8));
  return out;
}

// --- 3, 4 ------------------------------------------------------------------

constexpr double kExplicitFitT = 100.0;
constexpr double kExplicitSlack = 3.0;

std::vector<Report> explicit_residuals(int k, double exponent, const RunConfig& cfg) {
  const std::vector<double> Ts = {200.0, 500.0, 1000.0};
  auto table = primitive_table(k, 2.0 * Ts.back(), cfg.threads);
  const DivisorTable dk = divisor_sieve(k, static_cast<std::uint64_t>(main_term_upper(k, Ts.back())));

  auto residual = [&](double T, double& lhs, double& err, CosineSumResult& rhs) {
    lhs = table->value(2.0 * T) - table->value(T);
    err = table->error_at(2.0 * T) + table->error_at(T);
    rhs = moment_main_term(k, T, dk);
    return lhs - rhs.value;
  };
  double lhs0, err0;
  CosineSumResult rhs0;
  const double C = std::abs(residual(kExplicitFitT, lhs0, err0, rhs0)) / std::pow(kExplicitFitT, exponent);

  std::vector<Report> out;
  for (double T : Ts) {
    double lhs, err;
    CosineSumResult rhs;
    residual(T, lhs, err, rhs);
    Report r;
    r.name = "explicit_formula_k" + std::to_string(k);
    r.lhs = lhs;
    r.rhs = rhs.value;
    r.set_gap();
    const double bound = kExplicitSlack * C * std::pow(T, exponent);
    r.passed = r.gap_abs <= bound;
    r.cert("allowed_residual", bound).cert("moment_error", err);
    r.param("k", k).param("T", T).param("exponent", exponent).param("C", C);
    r.param("C_fitted_at_T", kExplicitFitT).param("slack", kExplicitSlack);
    r.param("terms", static_cast<double>(rhs.terms));
    r.param("residual_over_T_k4", r.gap_abs / std::pow(T, k / 4.0));
    out.push_back(r);
  }
  return out;
}

SuiteReport explicit_k2(const RunConfig& cfg) { return {"explicit_k2", explicit_residuals(2, 0.55, cfg)}; }

SuiteReport explicit_k13(const RunConfig& cfg) {
  SuiteReport out{"explicit_k13", explicit_residuals(1, 0.3, cfg)};
  for (Report& r : explicit_residuals(3, 0.8, cfg)) out.reports.push_back(r);
  return out;
}

// --- 5 ---------------------------------------------------------------------

SuiteReport cubic(const RunConfig& cfg) {
  SuiteReport out{"cubic", {}};
  const std::vector<double> xs = {500.0, 1000.0, 2000.0};
  auto table = primitive_table(3, xs.back(), cfg.threads);
  const DivisorTable d3 = divisor_sieve(3, static_cast<std::uint64_t>(cubic_upper(xs.back())));
  auto r_at = [&](double x) { return table->value(x) - cubic_primitive_approx(x, d3); };

  // The residual jumps at every 2 pi n^{2/3}, so C is the sup of
  // |r(x)| x^{-0.8} over [100, 200] rather than its value at one point.
  double C = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 100.0 + 0.5 * i;
    C = std::max(C, std::abs(r_at(x)) * std::pow(x, -0.8));
  }
  const double C_point = std::abs(r_at(200.0)) * std::pow(200.0, -0.8);
  for (double x : xs) {
    Report r;
    r.name = "cubic_primitive";
    r.lhs = table->value(x);
    r.rhs = cubic_primitive_approx(x, d3);
    r.set_gap();
    const double bound = C * std::pow(x, 0.8);
    r.passed = r.gap_abs <= bound;
    r.cert("allowed_residual", bound).cert("moment_error", table->error_at(x));
    r.param("x", x).param("C", C).param("C_at_200", C_point);
    out.reports.push_back(r);
  }
  return out;
}

// --- 6 ---------------------------------------------------------------------

SuiteReport primitive(const RunConfig& cfg) {
  SuiteReport out{"primitive", {}};
  auto table = primitive_table(1, 1e4, cfg.threads);
  const double low = table->sup_scaled(0.25, 1e2, 1e3);
  const double high = table->sup_scaled(0.25, 1e3, 1e4);
  Report r;
  r.name = "korolev_order";
  r.lhs = high;
  r.rhs = low;
  r.set_gap();
  const double ratio = high / low;
  r.passed = ratio <= 3.0 && ratio >= 1.0 / 3.0;
  r.param("ratio", ratio).param("factor", 3.0).param("end_value", table->value(1e4));
  r.cert("table_error_at_1e4", table->error_at(1e4));
  out.reports.push_back(r);

  int changes = 0;
  double prev = 0.0;
  for (const auto& p : table->panels()) {
    if (p.a < 1e2 || p.a > 1e3) continue;
    const double v = table->value(p.a);
    if (prev != 0.0 && v != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
    if (v != 0.0) prev = v;
  }
  Report s;
  s.name = "primitive_sign_changes";
  s.lhs = changes;
  s.rhs = 1.0;
  s.set_gap();
  s.passed = changes >= 1;
  s.param("lo", 1e2).param("hi", 1e3);
  out.reports.push_back(s);
  return out;
}

// --- 7 ---------------------------------------------------------------------

SuiteReport laurent(const RunConfig& cfg) {
  SuiteReport out{"laurent", {}};
  const std::vector<double> deltas = {0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
  std::vector<std::pair<double, Complex>> samples;
  MellinOptions mo;
  for (double d : deltas) samples.emplace_back(d, mellin_by_parts(2, Complex(1.0 + d, 0.0), cfg.tol_mellin, mo).value);
  const LaurentFit fit = laurent_fit_at_1(samples);
  const double target = 2.0 * kEulerGamma - std::log(kTwoPi);

  Report a;
  a.name = "laurent_c_minus2";
  a.lhs = fit.c_m2;
  a.rhs = 1.0;
  a.set_gap();
  a.passed = fit.c_m2 >= 0.95 && fit.c_m2 <= 1.05;
  a.cert("fit_error", fit.fit_error[0]).cert("fit_residual", fit.residual);
  a.param("X", mo.X);
  out.reports.push_back(a);

  Report b;
  b.name = "laurent_c_minus1";
  b.lhs = fit.c_m1;
  b.rhs = target;
  b.set_gap();
  b.passed = fit.c_m1 >= -0.705 && fit.c_m1 <= -0.663;
  b.cert("fit_error", fit.fit_error[1]).cert("fit_residual", fit.residual);
  b.param("c0", fit.c0).param("X", mo.X);
  out.reports.push_back(b);
  return out;
}

// --- 8 ---------------------------------------------------------------------

SuiteReport identities(const RunConfig& cfg, const ProgressSink& progress) {
  SuiteReport out{"identities", {}};
  auto note = [&](const std::string& m) {
    if (progress) progress("  identities: " + m);
  };

  note("square identity");
  Report sq = check_square_identity(1, Complex(3.0, 0.0), 500.0, cfg.tol_contour, cfg.threads);
  sq.passed = sq.gap_rel <= 1e-3;
  out.reports.push_back(sq);

  note("convolution");
  ContourOptions co;
  co.tol = cfg.tol_contour;
  co.threads = cfg.threads;
  Report c1 = check_convolution(3, 1, Complex(3.5, 0.0), 2.0, 200.0, co);
  Report c2 = check_convolution(3, 1, Complex(3.5, 0.0), 2.0, 400.0, co);
  c1.passed = c1.gap_rel <= 5e-2;
  c2.passed = c2.gap_rel <= 5e-2 && c2.gap_abs < c1.gap_abs;
  out.reports.push_back(c1);
  out.reports.push_back(c2);

  note("laplace");
  for (double s : {1.5, 2.0, 2.5}) {
    Report r = laplace_consistency(Complex(s, 0.0), 4e4, cfg.threads);
    r.passed = r.gap_rel <= 1e-3;
    out.reports.push_back(r);
  }

  note("truncated inversion");
  const double x = 10.0;
  const double c = 1.25;
  const double target = z_value(x);
  ContourOptions io{2000.0, cfg.tol_contour, cfg.threads};
  std::vector<double> errs;
  for (double U : {50.0, 100.0, 200.0, 400.0}) {
    const InversionResult inv = truncated_inversion(1, x, c, U, io);
    Report r;
    r.name = "truncated_inversion";
    r.lhs = inv.value;
    r.rhs = target;
    r.set_gap();
    r.passed = true;  // gated by the trend report below
    r.cert("quadrature", inv.quad_err).cert("imaginary_part", std::abs(inv.imag));
    r.param("k", 1).param("x", x).param("c", c).param("U", U).param("X", io.X);
    errs.push_back(r.gap_abs);
    out.reports.push_back(r);
  }
  int rises = 0;
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    if (errs[i] > errs[i - 1]) {
      ++rises;
      worst_rise = std::max(worst_rise, errs[i] / errs[i - 1] - 1.0);
    }
  }
  Report trend;
  trend.name = "truncated_inversion_trend";
  trend.lhs = rises;
  trend.rhs = 0.0;
  trend.set_gap();
  trend.passed = rises == 0;
  trend.param("increases", rises).param("largest_relative_increase", worst_rise);
  out.reports.push_back(trend);

  note("mean square");
  const std::vector<std::pair<double, double>> configs = {{1.0, 50.0}, {0.75, 30.0}, {1.5, 100.0}};
  for (const auto& [sigma, T] : configs) out.reports.push_back(check_mean_square(sigma, T));
  return out;
}

// --- 9 ---------------------------------------------------------------------

SuiteReport decomposition(const RunConfig& cfg) {
  SuiteReport out{"decomposition", {}};
  const std::vector<double> Xs = {1000.0, 1e4};
  const DivisorTable d3 = divisor_sieve(3, static_cast<std::uint64_t>(matched_cutoff(Xs.back())));
  primitive_table(3, Xs.back(), cfg.threads);
  for (Complex s : {Complex(2.0, 0.0), Complex(2.5, 0.0), Complex(1.6, 1.0)}) {
    for (double X : Xs) {
      const std::int64_t N = matched_cutoff(X);
      const Complex v1 = v1_series(s, N, d3);
      const Complex v2 = v2_residual(s, X, d3, cfg.tol_contour);
      MellinOptions mo;
      mo.X = X;
      mo.tail = TailHandling::boundary_term;
      const MellinSample m = mellin_by_parts(3, s, cfg.tol_mellin, mo);
      Report r;
      r.name = "theorem5_decomposition";
      r.lhs = v1 + v2;
      r.rhs = m.value;
      r.set_gap();
      r.gap_rel = r.gap_abs / std::abs(m.value);
      r.passed = r.gap_rel <= 1e-5;
      r.cert("m3_quadrature", m.quad_err).cert("m3_tail_to_untruncated", m.tail_bound).cert("m3_table_error", m.model_err);
      r.param("s_re", s.real()).param("s_im", s.imag()).param("X", X).param("N", static_cast<double>(N));
      r.param("v1_re", v1.real()).param("v1_im", v1.imag()).param("v2_re", v2.real()).param("v2_im", v2.imag());
      out.reports.push_back(r);
    }
  }
  return out;
}

// --- 10 --------------------------------------------------------------------

SuiteReport divisors(const RunConfig&) {
  SuiteReport out{"divisors", {}};
  constexpr std::uint64_t kN = 10000;
  for (int k : {2, 3, 4}) {
    const DivisorTable t = divisor_sieve(k, kN);
    std::uint64_t mismatches = 0;
    std::uint64_t sum = 0;
    for (std::uint64_t n = 1; n <= kN; ++n) {
      if (t[n] != divisor_brute(k, n)) ++mismatches;
      sum += t[n];
    }
    Report r;
    r.name = "divisor_sieve_vs_brute";
    r.lhs = static_cast<double>(mismatches);
    r.rhs = 0.0;
    r.set_gap();
    r.passed = mismatches == 0;
    r.param("k", k).param("N", static_cast<double>(kN)).param("sum_dk", static_cast<double>(sum));
    out.reports.push_back(r);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "functional_equation", "z_cross",    "explicit_k2", "explicit_k13",  "cubic",
      "primitive",           "laurent",    "identities",  "decomposition", "divisors"};
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg, const ProgressSink& progress) {
  const auto start = std::chrono::steady_clock::now();
  if (progress) progress("suite " + name + " ...");
  SuiteReport out;
  if (name == "functional_equation") {
    out = functional_equation(cfg);
  } else if (name == "z_cross") {
    out = z_cross(cfg);
  } else if (name == "explicit_k2") {
    out = explicit_k2(cfg);
  } else if (name == "explicit_k13") {
    out = explicit_k13(cfg);
  } else if (name == "cubic") {
    out = cubic(cfg);
  } else if (name == "primitive") {
    out = primitive(cfg);
  } else if (name == "laurent") {
    out = laurent(cfg);
  } else if (name == "identities") {
    out = identities(cfg, progress);
  } else if (name == "decomposition") {
    out = decomposition(cfg);
  } else if (name == "divisors") {
    out = divisors(cfg);
  } else {
    throw DomainError("verify: unknown suite '" + name + "'");
  }
  if (progress) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "suite %s %s (%.1f s)", name.c_str(), out.passed() ? "passed" : "FAILED", secs);
    progress(buf);
  }
  return out;
}

std::vector<SuiteReport> run_verify(const std::string& name, const RunConfig& cfg, const ProgressSink& progress) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const std::string& s : suite_names()) out.push_back(run_suite(s, cfg, progress));
  } else {
    out.push_back(run_suite(name, cfg, progress));
  }
  return out;
}

}  // namespace zlab
