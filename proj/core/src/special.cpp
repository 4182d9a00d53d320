#include "zlab/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "zlab/errors.hpp"

namespace zlab {
namespace {

// Lanczos approximation with N = 13, g = 6.0246800407767295837. Coefficients
// from Boost.Math (lanczos13m53), where Gamma(z) = L(z) (z+g-1/2)^(z-1/2)
// exp(-(z+g-1/2)) and L = P/Q with Q(z) = z (z+1) ... (z+11) expanded.
constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr std::array<double, 13> kLanczosNum = {
    23531376880.41075968857200767445163675473, 42919803642.64909876895789904700198885093,
    35711959237.35566804944018545154716670596, 17921034426.03720969991975575445893111267,
    6039542586.35202800506429164430729792107,  1439720407.311721673663223072794912393972,
    248874557.8620541565114603864132294232163, 31426415.58540019438061423162831820536287,
    2876370.628935372441225409051620849613599, 186056.2653952234950402949897160456992822,
    8071.672002365816210638002902272250613822, 210.8242777515793458725097339207133627117,
    2.506628274631000270164908177133837338626};
constexpr std::array<double, 13> kLanczosDen = {
    0.0,       39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0, 13339535.0,
    2637558.0, 357423.0,   32670.0,     1925.0,      66.0,        1.0};

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

const double kLogPi = std::log(kPi);
const double kHalfLogTwoPi = 0.5 * std::log(kTwoPi);

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

Complex lanczos_sum(Complex z) {
  // Evaluate P/Q in 1/z when |z| > 1 to keep both polynomials bounded.
  if (std::abs(z) <= 1.0) {
    Complex num = kLanczosNum.back();
    Complex den = kLanczosDen.back();
    for (int i = 11; i >= 0; --i) {
      num = num * z + kLanczosNum[i];
      den = den * z + kLanczosDen[i];
    }
    return num / den;
  }
  const Complex w = 1.0 / z;
  Complex num = kLanczosNum.front();
  Complex den = kLanczosDen.front();
  for (int i = 1; i < 13; ++i) {
    num = num * w + kLanczosNum[i];
    den = den * w + kLanczosDen[i];
  }
  return num / den;
}

// log sin(z) without overflow for large |Im z|; correct modulo 2 pi i.
Complex log_sin(Complex z) {
  const double y = z.imag();
  const Complex i(0.0, 1.0);
  if (std::abs(y) < 20.0) return std::log(std::sin(z));
  if (y > 0.0) {
    return Complex(-std::log(2.0), kPi / 2) - i * z + std::log(1.0 - std::exp(2.0 * i * z));
  }
  return Complex(-std::log(2.0), -kPi / 2) + i * z + std::log(1.0 - std::exp(-2.0 * i * z));
}

// Stirling series with seven Bernoulli corrections; requires |z| >= 10 away
// from the negative real axis.
Complex log_gamma_stirling(Complex z) {
  Complex result = (z - 0.5) * std::log(z) - z + kHalfLogTwoPi;
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex power = inv;
  for (int j = 1; j <= 7; ++j) {
    result += kBernoulli[j - 1] / (2.0 * j * (2.0 * j - 1.0)) * power;
    power *= inv2;
  }
  return result;
}

template <class Real>
Complex dirichlet_partial_sum(Complex s, int n_end) {
  using C = std::complex<Real>;
  const C ss(static_cast<Real>(s.real()), static_cast<Real>(s.imag()));
  C sum(0, 0);
  for (int n = 1; n < n_end; ++n) {
    sum += std::exp(-ss * std::log(static_cast<Real>(n)));
  }
  return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

}  // namespace

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z.real();
    throw PoleError(msg.str());
  }
  if (z.real() < 0.5) {
    return kLogPi - log_sin(kPi * z) - log_gamma(1.0 - z);
  }
  const Complex zgh = z + (kLanczosG - 0.5);
  return std::log(lanczos_sum(z)) + (z - 0.5) * std::log(zgh) - zgh;
}

Complex gamma_complex(Complex s) {
  if (is_nonpositive_integer(s)) {
    std::ostringstream msg;
    msg << "gamma_complex: pole at s = " << s.real();
    throw PoleError(msg.str());
  }
  if (s.imag() == 0.0 && s.real() > 0.0 && s.real() <= 171.0) {
    return std::tgamma(s.real());
  }
  return std::exp(log_gamma(s));
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole");
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  Complex shift = 0.0;
  while (std::abs(z) < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  Complex power = inv2;
  Complex series = std::log(z) - 0.5 / z;
  for (int j = 1; j <= 7; ++j) {
    series -= kBernoulli[j - 1] / (2.0 * j) * power;
    power *= inv2;
  }
  return series + shift;
}

ChiValue chi(Complex s) {
  ChiValue out;
  out.s = s;
  const Complex half_one_minus = 0.5 * (1.0 - s);
  const Complex half_s = 0.5 * s;
  if (is_nonpositive_integer(half_one_minus)) {
    std::ostringstream msg;
    msg << "chi: pole at s = " << s.real();
    throw PoleError(msg.str());
  }
  if (is_nonpositive_integer(half_s)) {
    // Trivial zeros of zeta are zeros of chi.
    out.value = 0.0;
    out.log_abs = -std::numeric_limits<double>::infinity();
    return out;
  }
  Complex log_chi;
  if (std::abs(s.imag()) > 20.0 && std::abs(s.real()) <= 20.0) {
    log_chi = (s - 0.5) * kLogPi + log_gamma_stirling(half_one_minus) - log_gamma_stirling(half_s);
  } else {
    log_chi = (s - 0.5) * kLogPi + log_gamma(half_one_minus) - log_gamma(half_s);
  }
  out.log_abs = log_chi.real();
  out.arg = log_chi.imag();
  out.value = std::exp(log_chi);
  return out;
}

double theta_exact(double t) {
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

double riemann_siegel_theta(double t) {
  if (!(t >= 0.0)) throw DomainError("riemann_siegel_theta: t must be >= 0");
  if (t < 10.0) return theta_exact(t);
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 48.0 +
             inv2 * (7.0 / 5760.0 +
                     inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0 + inv2 * (511.0 / 1216512.0)))));
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + series;
}

double theta_prime(double t) {
  const double inv2 = 1.0 / (t * t);
  const double series =
      inv2 * (1.0 / 48.0 +
              inv2 * (21.0 / 5760.0 + inv2 * (155.0 / 80640.0 + inv2 * (889.0 / 430080.0))));
  return 0.5 * std::log(t / kTwoPi) - series;
}

ZetaValue zeta_em(Complex s, const ZetaOptions& opts) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (opts.n_bernoulli < 1 || opts.n_bernoulli > 14) {
    throw DomainError("zeta: n_bernoulli must lie in [1, 14]");
  }
  const int n_terms = opts.n_terms > 0
                          ? opts.n_terms
                          : std::max(50, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))));
  const int m = opts.n_bernoulli;
  const double sigma = s.real();
  if (sigma + 2 * m + 1 <= 0.0) throw DomainError("zeta: Re s too negative for n_bernoulli");

  const Complex partial = opts.extended ? dirichlet_partial_sum<long double>(s, n_terms)
                                        : dirichlet_partial_sum<double>(s, n_terms);
  const double N = n_terms;
  const Complex n_pow = std::exp(-s * std::log(N));  // N^{-s}
  Complex sum = partial + 0.5 * n_pow + N * n_pow / (s - 1.0);

  // term_j = s (s+1) ... (s+2j-2) N^{-s-2j+1}
  Complex term = s * n_pow / N;
  double factorial = 2.0;  // (2j)!
  for (int j = 1; j <= m; ++j) {
    sum += kBernoulli[j - 1] / factorial * term;
    term *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j) / (N * N);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  // |R| <= |s + 2m + 1| / (sigma + 2m + 1) * |next term|
  const double next = std::abs(kBernoulli[m] / factorial * term);
  const double bound = std::abs(s + (2.0 * m + 1.0)) / (sigma + 2.0 * m + 1.0) * next;

  ZetaValue out{sum, bound, n_terms, m};
  if (bound > opts.tol * std::max(1.0, std::abs(sum))) {
    std::ostringstream msg;
    msg << "zeta: Euler-Maclaurin remainder bound " << bound << " exceeds tolerance";
    throw AccuracyError(msg.str());
  }
  return out;
}

Complex zeta_euler_maclaurin(Complex s, int n_terms, int n_bernoulli) {
  ZetaOptions opts;
  opts.n_terms = n_terms;
  opts.n_bernoulli = n_bernoulli;
  return zeta_em(s, opts).value;
}

}  // namespace zlab
