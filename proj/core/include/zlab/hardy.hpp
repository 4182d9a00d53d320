#pragma once

#include <array>

namespace zlab {

// One evaluation of Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + i t).
struct ZSample {
  double t = 0.0;
  double value = 0.0;
  double theta = 0.0;
  int main_terms = 0;   // length of the Riemann-Siegel main sum (0 for the oracle)
  int corrections = 0;  // correction terms C_0 .. C_{corrections}
  double err_est = 0.0; // absolute
};

// err_est = kRsErrorConstants[j] * t^{-(2j+3)/4} for j corrections.
// Calibrated against z_oracle on [50, 5000] by tools/calibrate_rs.cpp.
extern const std::array<double, 5> kRsErrorConstants;

// Riemann-Siegel formula with corrections C_0..C_corrections (0..4).
// Throws DomainError for t < 10 or corrections outside [0, 4].
ZSample z_rs(double t, int corrections = 3);

// e^{i theta(t)} zeta(1/2 + i t) with theta from log Gamma and zeta by
// Euler-Maclaurin. Defined for every real t (Z is even). err_est holds the
// zeta remainder bound plus the discarded imaginary part. Throws
// AccuracyError if the imaginary residual exceeds 1e-6.
ZSample z_oracle_sample(double t);
double z_oracle(double t);

// Riemann-Siegel with three corrections above t = 10, oracle below.
// This is the integrand used by every moment and transform.
double z_value(double t);

inline constexpr double kRsCutoff = 10.0;

}  // namespace zlab
