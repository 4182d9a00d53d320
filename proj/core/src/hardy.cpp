#include "zlab/hardy.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "zlab/errors.hpp"
#include "zlab/special.hpp"

namespace zlab {
namespace {

#include "rs_coefficients.inc"

template <std::size_t N>
double poly_even_odd(const double (&c)[N], double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

double rs_correction(int j, double x) {
  switch (j) {
    case 0: return poly_even_odd(kRsC0, x);
    case 1: return poly_even_odd(kRsC1, x);
    case 2: return poly_even_odd(kRsC2, x);
    case 3: return poly_even_odd(kRsC3, x);
    default: return poly_even_odd(kRsC4, x);
  }
}

// log n and n^{-1/2}, enough for t up to about 1e8.
struct TermTables {
  static constexpr int kSize = 4096;
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
  TermTables() : log_n(kSize + 1), inv_sqrt_n(kSize + 1) {
    for (int n = 1; n <= kSize; ++n) {
      log_n[n] = std::log(static_cast<double>(n));
      inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
  }
};

const TermTables& term_tables() {
  static const TermTables tables;
  return tables;
}

}  // namespace

const std::array<double, 5> kRsErrorConstants = {0.179, 0.0789, 0.0156, 0.0438, 0.277};

ZSample z_rs(double t, int corrections) {
  if (!(t >= kRsCutoff)) {
    std::ostringstream msg;
    msg << "z_rs: t = " << t << " below the Riemann-Siegel cutoff " << kRsCutoff;
    throw DomainError(msg.str());
  }
  if (corrections < 0 || corrections > 4) throw DomainError("z_rs: corrections must lie in [0, 4]");

  const double a = std::sqrt(t / kTwoPi);
  const int n_main = static_cast<int>(a);
  const double p = a - n_main;
  const double th = riemann_siegel_theta(t);
  const TermTables& tab = term_tables();

  double sum = 0.0;
  for (int n = 1; n <= n_main; ++n) {
    if (n <= TermTables::kSize) {
      sum += tab.inv_sqrt_n[n] * std::cos(th - t * tab.log_n[n]);
    } else {
      const double dn = n;
      sum += std::cos(th - t * std::log(dn)) / std::sqrt(dn);
    }
  }
  sum *= 2.0;

  const double x = p - 0.5;
  const double inv_a = 1.0 / a;
  double rem = 0.0;
  double scale = 1.0;
  for (int j = 0; j <= corrections; ++j) {
    rem += rs_correction(j, x) * scale;
    scale *= inv_a;
  }
  const double sign = (n_main % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  rem *= sign / std::sqrt(a);

  ZSample out;
  out.t = t;
  out.value = sum + rem;
  out.theta = th;
  out.main_terms = n_main;
  out.corrections = corrections;
  out.err_est = kRsErrorConstants[corrections] * std::pow(t, -(2.0 * corrections + 3.0) / 4.0);
  return out;
}

ZSample z_oracle_sample(double t) {
  const double th = theta_exact(t);
  const ZetaValue zv = zeta_em(Complex(0.5, t));
  const Complex z = std::polar(1.0, th) * zv.value;
  if (std::abs(z.imag()) > 1e-6) {
    std::ostringstream msg;
    msg << "z_oracle: imaginary residual " << z.imag() << " at t = " << t;
    throw AccuracyError(msg.str());
  }
  ZSample out;
  out.t = t;
  out.value = z.real();
  out.theta = th;
  out.main_terms = 0;
  out.corrections = 0;
  out.err_est = zv.error_bound + std::abs(z.imag());
  return out;
}

double z_oracle(double t) { return z_oracle_sample(t).value; }

double z_value(double t) {
  if (t >= kRsCutoff) return z_rs(t, 3).value;
  return z_oracle(t);
}

}  // namespace zlab
