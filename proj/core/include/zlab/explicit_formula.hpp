#pragma once

#include <complex>
#include <cstdint>

#include "zlab/arith.hpp"
#include "zlab/special.hpp"

namespace zlab {

struct PhaseData {
  int k = 0;
  std::int64_t n = 0;
  double t = 0.0;
  double F = 0.0;   // t log((t/2pi)^{k/2} / n) - k t / 2 - k pi / 8
  double F1 = 0.0;  // dF/dt = log((t/2pi)^{k/2} / n)
  double F2 = 0.0;  // k / (2t)
};

struct CosineSumResult {
  int k = 0;
  double T = 0.0;
  double value = 0.0;
  std::int64_t n_lo = 0;  // ceil((T/2pi)^{k/2})
  std::int64_t n_hi = 0;  // floor((T/pi)^{k/2})
  std::int64_t terms = 0;
};

// tau(k, t) = exp(-k chi'/chi(1/2 + i t)) from the asymptotic expansion:
// (t/2pi)^k (1 - k / (24 t^2)). Throws DomainError for t <= 0.
double tau(int k, double t);

// tau(k, t) computed from chi'/chi(1/2 + i t) = log(pi) - Re psi(1/4 + i t/2).
double tau_from_chi(int k, double t);

// Phase of the k-th explicit formula and its first two derivatives.
// Requires n >= 1 and t > 0.
PhaseData phase(int k, std::int64_t n, double t);

// Stationary point of the phase, 2 pi n^{2/k}.
double saddle_point(int k, std::int64_t n);

// First-order saddle contribution pi sqrt(2/k) n^{1/k} exp(-k pi i n^{2/k} + (2-k) pi i / 8).
Complex saddle_term(int k, std::int64_t n);

// cos(2 pi c) with c reduced to its fractional part first, so phases that are
// large multiples of 2 pi stay exact.
double cos_cycles(double c);

// 2 pi sqrt(2/k) sum d_k(n) n^{-1/2+1/k} cos(k pi n^{2/k} + (k-2) pi / 8) over
// (T/2pi)^{k/2} <= n <= (T/pi)^{k/2}, with k in {1, 2, 3, 4} and table.k == k.
// Throws CapacityError if the table is too short.
CosineSumResult moment_main_term(int k, double T, const DivisorTable& table);

// 2 pi sqrt(2/3) sum_{n <= (x/2pi)^{3/2}} d_3(n) n^{-1/6} cos(3 pi n^{2/3} + pi/8).
double cubic_primitive_approx(double x, const DivisorTable& table);

// C^2 cutoff with rho(x) = 1 for x <= 1/2, 0 for x >= 2 and
// rho(x) + rho(1/x) = 1.
double smoothing_rho(double x);

// Largest n entering moment_main_term(k, T, .).
std::int64_t main_term_upper(int k, double T);
// Largest n entering cubic_primitive_approx(x, .).
std::int64_t cubic_upper(double x);

}  // namespace zlab
