#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "zlab/arith.hpp"
#include "zlab/moments.hpp"
#include "zlab/report.hpp"

namespace zlab {

enum class MellinMethod { direct, by_parts, series };

// How by_parts treats the part of the integral beyond the truncation X.
//  certified_model: odd k drop it and certify |s| C X^{e-sigma} / (sigma - e);
//                   even k add the fitted main term's analytic tail and
//                   certify the residual.
//  boundary_term:   add I_k(X) X^{-s}, so the value equals the truncated
//                   transform of Z^k over [1, X]; the certificate bounds the
//                   distance to the full transform.
enum class TailHandling { certified_model, boundary_term };

struct MellinSample {
  Complex s;
  int k = 0;
  Complex value;
  double X = 0.0;
  double tail_bound = 0.0;
  double quad_err = 0.0;  // order-16 vs order-8 node-sum difference
  double model_err = 0.0; // propagated I_k table error (quadrature and Riemann-Siegel model)
  MellinMethod method = MellinMethod::direct;
  bool certified = true;
};

// Growth data for I_k calibrated on the cached primitive table over
// [1, kGrowthCalibrationEnd].
//   odd k:  |I_k(x)| <= C x^e with e = 1/4 (k = 1) or 0.8 (k = 3),
//           C = 1.5 * sup |I_k(x)| x^{-e}.
//   even k: I_k(x) = m(x) + r(x), m(x) = x sum_j a_j log^j x + a_c fitted by
//           least squares on [fit_lo, fit_hi], |r(x)| <= C x^e with
//           e = 1/2 (k = 2) or 3/4 (k = 4), C = 1.5 * sup |r| x^{-e} on the window.
struct GrowthModel {
  int k = 0;
  double exponent = 0.0;
  double constant = 0.0;
  bool has_main_term = false;
  std::vector<double> log_coeffs;  // a_0, a_1, ...
  double const_coeff = 0.0;
  double fit_lo = 0.0;
  double fit_hi = 0.0;

  double main_term(double x) const;
  // Analytic continuation in s of the integral of m(x) x^{-s-1} over [X, inf).
  // Throws PoleError at s = 1.
  Complex main_term_tail(Complex s, double X) const;
  // Bound on |s| * |integral of (I_k - m or I_k) x^{-s-1} over [X, inf)|.
  double tail_certificate(Complex s, double X) const;
};

inline constexpr double kGrowthCalibrationEnd = 1e4;
inline constexpr double kDefaultMellinX = 1e4;

// k in [1, 4]. Computed once per process.
const GrowthModel& growth_model(int k);

// Weighted node sums over the cached I_k table,
//   P(p) = sum_i c_i x_i^{-p},  c_i = w_i Z^k(x_i)  (integrand kind)
//                               c_i = w_i I_k(x_i)  (primitive kind),
// on [lo, hi]. Table panels are split so that the phase of x^{-i t} changes by
// at most 3 radians per sub-panel for |t| up to a power-of-two band. Results
// are memoized per p (exactly, with P(conj p) = conj P(p)).
struct NodeSum {
  Complex value;   // order 16
  double err = 0;  // |order 16 - order 8|
};
enum class NodeKind { integrand, primitive };
NodeSum mellin_node_sum(int k, NodeKind kind, double lo, double hi, Complex p);

// Drops cached evaluators and memo tables.
void clear_mellin_caches();

// Integral of Z^k x^{-s} over [1, X] plus a certified bound on the rest.
// Requires sigma > 1.1 (ConvergenceError otherwise) and X >= 10.
MellinSample mellin_direct(int k, Complex s, double X, double tol = 1e-8);

struct MellinOptions {
  double X = kDefaultMellinX;
  TailHandling tail = TailHandling::certified_model;
};

// s * integral of I_k(x) x^{-s-1} over [1, X] with tail treatment per options.
// Regime sigma > e + 0.05 with e from growth_model(k); ConvergenceError outside.
// Throws AccuracyError if quad_err exceeds tol.
MellinSample mellin_by_parts(int k, Complex s, double tol = 1e-8, const MellinOptions& opts = {});

// Integral of Z^k x^{-s} over [1, X] for any s (no certificate, no regime check).
Complex mellin_truncated(int k, Complex s, double X);

// (2 pi)^{1-s} sqrt(2/3) sum_{n <= N} d_3(n) n^{-1/6-2s/3} cos(3 pi n^{2/3} + pi/8).
Complex v1_series(Complex s, std::int64_t N, const DivisorTable& table);

// Smoothed partial sums sum rho(n/N) a_n (n < 2N) at N and N/2 combined by one
// Richardson step. Uncertified; meant for 1 < sigma <= 5/4.
Complex v1_series_smoothed(Complex s, std::int64_t N, const DivisorTable& table);

// N matched to the cutoff X: floor((X / 2 pi)^{3/2}).
std::int64_t matched_cutoff(double X);

// s * integral over [1, X] of r(x) x^{-s-1} plus r(X) X^{-s}, where
// r = I_3 - cubic_primitive_approx. With v1_series at the matched N the sum
// is exactly the truncated transform of Z^3 over [1, X].
// Requires sigma > 0.8 and X >= 100.
Complex v2_residual(Complex s, double X, const DivisorTable& table, double tol = 1e-10);

struct LaurentFit {
  double c_m2 = 0.0;
  double c_m1 = 0.0;
  double c0 = 0.0;
  double residual = 0.0;                 // max |fit - sample|
  std::array<double, 3> fit_error{};     // standard errors of (c_m2, c_m1, c0)
};

// Least squares value ~ c_m2 / delta^2 + c_m1 / delta + c0 on real parts.
// Throws DomainError for bad deltas, FitError if the residual exceeds 10% of
// the smallest retained basis magnitude.
LaurentFit laurent_fit_at_1(const std::vector<std::pair<double, Complex>>& samples);

// mellin_by_parts(2, 1 + delta) for each delta.
std::vector<std::pair<double, Complex>> laurent_samples(const std::vector<double>& deltas,
                                                        double X = kDefaultMellinX);

struct ContourOptions {
  double X = 500.0;     // truncation shared by every transform in the check
  double tol = 1e-9;    // absolute tolerance of the contour quadrature
  int threads = 1;
};

// M_k(s) against (1 / 2 pi i) * integral over [c - iV, c + iV] of
// M_{k-r}(w) M_r(1 - w + s) dw, all transforms truncated at X (for which
// the identity is exact as V -> infinity).
Report check_convolution(int k, int r, Complex s, double c, double V, const ContourOptions& opts = {});

// M_k(s)^2 against 2 * integral over [1, X] of x^{-s} * (integral over
// [sqrt x, x] of Z^k(u) Z^k(x/u) du / u) dx.
Report check_square_identity(int k, Complex s, double X, double tol = 1e-9, int threads = 1);

struct InversionResult {
  double value = 0.0;
  double imag = 0.0;
  double quad_err = 0.0;
};

// (1 / 2 pi i) * integral over [c - iU, c + iU] of x^{s-1} M_k(s) ds with M_k
// truncated at opts.X. Throws AccuracyError if |imag| > 10 * quad_err + 1e-12.
InversionResult truncated_inversion(int k, double x, double c, double U,
                                    const ContourOptions& opts = {2000.0, 1e-9, 1});

// Laplace-Mellin relation: integral over (0, inf) of Lbar(x) x^{s-1} against
// M_1(s) Gamma(s), Lbar(x) = integral over [1, inf) of Z(y) e^{-x y}.
Report laplace_consistency(Complex s, double y_max = 4e4, int threads = 1);

// Lbar(x) from the cached k = 1 table, truncated where e^{-x y} < e^{-45} or
// at y_max. Returns value and the truncation certificate.
std::pair<double, double> laplace_lbar(double x, double y_max = 4e4);

// Mean-square inequality for g = Z on [a, b]:
// integral over [0, T] of |integral of g x^{-sigma-it}|^2 dt <=
// 2 pi * integral of g^2 x^{1 - 2 sigma}.
Report check_mean_square(double sigma, double T, double a = 10.0, double b = 200.0);

}  // namespace zlab
