#include "zlab/explicit_formula.hpp"

#include <cmath>
#include <sstream>

#include "zlab/errors.hpp"
#include "zlab/summation.hpp"

namespace zlab {
namespace {

void check_positive_t(double t, const char* who) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << who << ": t must be positive";
    throw DomainError(msg.str());
  }
}

// k pi n^{2/k} / (2 pi) = k n^{2/k} / 2, computed exactly where possible.
double saddle_cycles(int k, std::int64_t n) {
  const double dn = static_cast<double>(n);
  switch (k) {
    case 1: return 0.5 * dn * dn;
    case 2: return dn;
    case 4: return 2.0 * std::sqrt(dn);
    default: return 0.5 * k * std::pow(dn, 2.0 / k);
  }
}

}  // namespace

double tau(int k, double t) {
  check_positive_t(t, "tau");
  return std::pow(t / kTwoPi, k) * (1.0 - k / (24.0 * t * t));
}

double tau_from_chi(int k, double t) {
  check_positive_t(t, "tau_from_chi");
  const double log_deriv = std::log(kPi) - digamma(Complex(0.25, 0.5 * t)).real();
  return std::exp(-k * log_deriv);
}

PhaseData phase(int k, std::int64_t n, double t) {
  if (n < 1) throw DomainError("phase: n must be >= 1");
  check_positive_t(t, "phase");
  PhaseData p;
  p.k = k;
  p.n = n;
  p.t = t;
  p.F1 = 0.5 * k * std::log(t / kTwoPi) - std::log(static_cast<double>(n));
  p.F = t * p.F1 - 0.5 * k * t - k * kPi / 8.0;
  p.F2 = k / (2.0 * t);
  return p;
}

double saddle_point(int k, std::int64_t n) {
  if (n < 1) throw DomainError("saddle_point: n must be >= 1");
  return kTwoPi * std::pow(static_cast<double>(n), 2.0 / k);
}

double cos_cycles(double c) {
  const double frac = c - std::floor(c);
  return std::cos(kTwoPi * frac);
}

Complex saddle_term(int k, std::int64_t n) {
  if (n < 1) throw DomainError("saddle_term: n must be >= 1");
  const double modulus = kPi * std::sqrt(2.0 / k) * std::pow(static_cast<double>(n), 1.0 / k);
  double cycles = -saddle_cycles(k, n) + (2.0 - k) / 16.0;
  cycles -= std::floor(cycles);
  return std::polar(modulus, kTwoPi * cycles);
}

std::int64_t main_term_upper(int k, double T) {
  return static_cast<std::int64_t>(std::floor(std::pow(T / kPi, 0.5 * k)));
}

std::int64_t cubic_upper(double x) {
  return static_cast<std::int64_t>(std::floor(std::pow(x / kTwoPi, 1.5)));
}

CosineSumResult moment_main_term(int k, double T, const DivisorTable& table) {
  if (k < 1 || k > 4) throw DomainError("moment_main_term: k must lie in [1, 4]");
  if (table.k != k) throw DomainError("moment_main_term: divisor table has the wrong k");
  CosineSumResult r;
  r.k = k;
  r.T = T;
  r.n_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::pow(T / kTwoPi, 0.5 * k))));
  r.n_hi = main_term_upper(k, T);
  if (r.n_hi > static_cast<std::int64_t>(table.limit)) {
    std::ostringstream msg;
    msg << "moment_main_term: need d_" << k << "(n) up to " << r.n_hi << ", table has " << table.limit;
    throw CapacityError(msg.str());
  }
  // Each term is d_k(n) n^{-1/2} times twice the real part of the saddle value.
  NeumaierSum sum;
  for (std::int64_t n = r.n_lo; n <= r.n_hi; ++n) {
    const double dn = static_cast<double>(n);
    sum.add(static_cast<double>(table[n]) / std::sqrt(dn) * saddle_term(k, n).real());
  }
  r.terms = r.n_hi >= r.n_lo ? r.n_hi - r.n_lo + 1 : 0;
  r.value = 2.0 * sum.value();
  return r;
}

double cubic_primitive_approx(double x, const DivisorTable& table) {
  if (table.k != 3) throw DomainError("cubic_primitive_approx: needs a d_3 table");
  const std::int64_t n_max = cubic_upper(x);
  if (n_max > static_cast<std::int64_t>(table.limit)) {
    std::ostringstream msg;
    msg << "cubic_primitive_approx: need d_3(n) up to " << n_max << ", table has " << table.limit;
    throw CapacityError(msg.str());
  }
  NeumaierSum sum;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    sum.add(static_cast<double>(table[n]) / std::sqrt(dn) * saddle_term(3, n).real());
  }
  return 2.0 * sum.value();
}

double smoothing_rho(double x) {
  if (!(x > 0.0)) throw DomainError("smoothing_rho: x must be positive");
  const double u = std::log2(x);
  if (u <= -1.0) return 1.0;
  if (u >= 1.0) return 0.0;
  const double u2 = u * u;
  const double odd = u * (15.0 - u2 * (10.0 - 3.0 * u2)) / 16.0;
  return 0.5 - odd;
}

}  // namespace zlab
