#pragma once

#include <array>
#include <functional>
#include <vector>

#include "zlab/special.hpp"

namespace zlab {

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once by Newton iteration and cached; n in [1, 64].
const GaussRule& gauss_legendre(int n);

inline constexpr int kPanelOrder = 16;
inline constexpr int kEmbeddedOrder = 8;
inline constexpr int kEvalsPerPanel = kPanelOrder + kEmbeddedOrder;

struct QuadratureResult {
  Complex value;
  double abs_err_est = 0.0;
  long long panels = 0;
  long long evals = 0;
};

// An accepted panel with the integrand at its 16 Gauss nodes.
struct PanelLeaf {
  double a = 0.0;
  double b = 0.0;
  std::array<double, kPanelOrder> f{};
};

struct QuadOptions {
  double tol = 1e-10;         // absolute, shared out in proportion to panel width
  double tol_density = 0.0;   // if > 0, per-unit-length tolerance used instead
  long long max_evals = 100'000'000;
  double max_panel = 1.0;     // widest initial panel
  double grid = 0.0;          // if > 0, initial panel ends are multiples of grid
  int max_depth = 24;         // bisection depth per initial panel
  int threads = 1;
  std::vector<double> breakpoints;
  std::vector<PanelLeaf>* leaves = nullptr;  // collected for real integrands only
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<Complex(double)>;
// Local oscillation rate in cycles per unit length. May be empty.
using FrequencyHint = std::function<double(double)>;

// k * theta'(t) / (2 pi), with theta' frozen at its t = 10 value below 10.
FrequencyHint hardy_frequency(int k);

// Initial panel ends: breakpoints are kept, each panel spans at most a
// quarter period of the hint and at most max_panel.
std::vector<double> panel_partition(double a, double b, const FrequencyHint& freq,
                                    const QuadOptions& opts);

// Panelled Gauss-Legendre (order 16, order-8 embedded error estimate) with
// bisection until each panel's estimate is <= density * width. Throws
// BudgetError (carrying the best estimate) when max_evals runs out first.
QuadratureResult integrate_oscillatory(const RealIntegrand& f, double a, double b,
                                       const FrequencyHint& freq, const QuadOptions& opts = {});
QuadratureResult integrate_oscillatory(const ComplexIntegrand& f, double a, double b,
                                       const FrequencyHint& freq, const QuadOptions& opts = {});

// (1 / 2 pi i) * integral of F(s) ds along s = c + i t, t0 <= t <= t1.
QuadratureResult integrate_vertical_line(const std::function<Complex(Complex)>& F, double c,
                                         double t0, double t1, const FrequencyHint& freq,
                                         const QuadOptions& opts = {});

}  // namespace zlab
