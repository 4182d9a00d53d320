#pragma once

#include <complex>

namespace zlab {

// s = sigma + i t and every complex value produced by the library.
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// chi(s) with its logarithm split into modulus and a continuous argument.
// The argument is the imaginary part of the analytic logarithm obtained from
// log chi(s) = (s - 1/2) log(pi) + log Gamma((1 - s)/2) - log Gamma(s/2), where
// both log-gammas are continued from the positive real axis.
struct ChiValue {
  Complex s;
  Complex value;
  double log_abs = 0.0;
  double arg = 0.0;
};

// Principal-branch-continuous log Gamma. For Re z >= 1/2 this is the analytic
// continuation from the positive real axis (so Im log Gamma(1/4 + i t/2) is
// continuous in t). For Re z < 1/2 the reflection formula is used and the
// result is correct modulo 2 pi i. Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

// Gamma(s) via the 13-term Lanczos approximation plus reflection.
// Throws PoleError at non-positive integers.
Complex gamma_complex(Complex s);

// Complex digamma psi(z) (recurrence to |z| >= 10 then asymptotic series).
Complex digamma(Complex z);

// chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s). For |Im s| > 20 the
// log-gammas are evaluated by the Stirling series with seven Bernoulli
// corrections. Throws PoleError at s = 1, 3, 5, ...
ChiValue chi(Complex s);

// Riemann-Siegel theta with chi(1/2 + i t) = exp(-2 i theta(t)), theta(0) = 0.
// Asymptotic series for t >= 10, log Gamma below. Throws DomainError for t < 0.
double riemann_siegel_theta(double t);

// theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log(pi), valid for all real t
// (odd in t). Independent of the asymptotic series used by riemann_siegel_theta.
double theta_exact(double t);

// d theta / dt from the asymptotic series, 1/2 log(t / 2 pi) - 1/(48 t^2) - ...
double theta_prime(double t);

struct ZetaOptions {
  int n_terms = 0;        // 0 selects max(50, ceil(1.3 |Im s|))
  int n_bernoulli = 12;   // Euler-Maclaurin correction terms, 1..14
  double tol = 1e-10;     // allowed remainder bound, relative to max(1, |zeta|)
  bool extended = false;  // accumulate the Dirichlet sum in long double
};

struct ZetaValue {
  Complex value;
  double error_bound = 0.0;  // Euler-Maclaurin remainder bound
  int n_terms = 0;
  int n_bernoulli = 0;
};

// zeta(s) by Euler-Maclaurin summation with an explicit remainder bound.
// Throws PoleError at s = 1 and AccuracyError when the bound exceeds tol.
ZetaValue zeta_em(Complex s, const ZetaOptions& opts = {});

// Convenience form returning only the value.
Complex zeta_euler_maclaurin(Complex s, int n_terms = 0, int n_bernoulli = 12);

}  // namespace zlab
