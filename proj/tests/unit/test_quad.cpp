#include <gtest/gtest.h>

#include <cmath>

#include "zlab/errors.hpp"
#include "zlab/quad.hpp"
#include "zlab/special.hpp"
#include "zlab/summation.hpp"

using namespace zlab;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n : {1, 4, 8, 16, 32}) {
    const GaussRule& g = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(GaussLegendre, NodesAscendingAndCached) {
  const GaussRule& g = gauss_legendre(16);
  for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
  EXPECT_EQ(&g, &gauss_legendre(16));
  EXPECT_THROW(gauss_legendre(0), DomainError);
  EXPECT_THROW(gauss_legendre(65), DomainError);
}

TEST(Quadrature, OscillatoryClosedForm) {
  const double w = 50.0;
  const RealIntegrand f = [w](double x) { return std::sin(w * x); };
  const FrequencyHint hint = [w](double) { return w / kTwoPi; };
  const QuadratureResult r = integrate_oscillatory(f, 0.0, 100.0, hint, {});
  EXPECT_NEAR(r.value.real(), (1.0 - std::cos(w * 100.0)) / w, 1e-11);
  EXPECT_LE(r.abs_err_est, 1e-10);
}

TEST(Quadrature, ComplexChirp) {
  // Integral of x e^{i x^2} over [0, 20] is (e^{400 i} - 1) / (2 i).
  const ComplexIntegrand f = [](double x) { return x * std::exp(Complex(0.0, x * x)); };
  const FrequencyHint hint = [](double x) { return std::max(x, 1.0) / kPi; };
  const QuadratureResult r = integrate_oscillatory(f, 0.0, 20.0, hint, {});
  const Complex exact = (std::exp(Complex(0.0, 400.0)) - 1.0) / Complex(0.0, 2.0);
  EXPECT_LT(std::abs(r.value - exact), 1e-10);
}

TEST(Quadrature, Additivity) {
  const RealIntegrand f = [](double x) { return std::cos(x * std::log(x)); };
  const FrequencyHint hint = [](double x) { return (std::log(x) + 1.0) / kTwoPi; };
  QuadOptions o;
  o.tol_density = 1e-13;
  const double whole = integrate_oscillatory(f, 2.0, 300.0, hint, o).value.real();
  const double left = integrate_oscillatory(f, 2.0, 117.3, hint, o).value.real();
  const double right = integrate_oscillatory(f, 117.3, 300.0, hint, o).value.real();
  EXPECT_NEAR(whole, left + right, 1e-10);
}

TEST(Quadrature, BreakpointsAndGrid) {
  QuadOptions o;
  o.breakpoints = {2.5, 7.25};
  o.max_panel = 2.0;
  const std::vector<double> ends = panel_partition(0.0, 10.0, {}, o);
  EXPECT_EQ(ends.front(), 0.0);
  EXPECT_EQ(ends.back(), 10.0);
  EXPECT_NE(std::find(ends.begin(), ends.end(), 2.5), ends.end());
  EXPECT_NE(std::find(ends.begin(), ends.end(), 7.25), ends.end());
  for (std::size_t i = 1; i < ends.size(); ++i) EXPECT_LE(ends[i] - ends[i - 1], 2.0 + 1e-12);

  QuadOptions g;
  g.grid = 0.25;
  g.max_panel = 1.0;
  for (double e : panel_partition(3.0, 9.0, {}, g)) EXPECT_DOUBLE_EQ(e / 0.25, std::round(e / 0.25));
}

TEST(Quadrature, JumpHandledWithBreakpoint) {
  const RealIntegrand f = [](double x) { return x < std::sqrt(2.0) ? 1.0 : 3.0; };
  QuadOptions o;
  o.breakpoints = {std::sqrt(2.0)};
  const QuadratureResult r = integrate_oscillatory(f, 0.0, 4.0, {}, o);
  EXPECT_NEAR(r.value.real(), std::sqrt(2.0) + 3.0 * (4.0 - std::sqrt(2.0)), 1e-13);
}

TEST(Quadrature, ThreadCountDoesNotChangeResult) {
  const RealIntegrand f = [](double x) { return std::sin(x * x) / (1.0 + x); };
  const FrequencyHint hint = [](double x) { return std::max(x, 1.0) / kPi; };
  QuadOptions one;
  QuadOptions four;
  four.threads = 4;
  const QuadratureResult a = integrate_oscillatory(f, 0.0, 60.0, hint, one);
  const QuadratureResult b = integrate_oscillatory(f, 0.0, 60.0, hint, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.abs_err_est, b.abs_err_est);
  EXPECT_EQ(a.panels, b.panels);
}

TEST(Quadrature, BudgetErrorCarriesEstimate) {
  const RealIntegrand f = [](double x) { return std::sin(1.0 / x); };
  QuadOptions o;
  o.max_evals = 2000;
  o.tol = 1e-14;
  try {
    integrate_oscillatory(f, 1e-4, 1.0, {}, o);
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_TRUE(std::isfinite(e.best_re()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, DomainAndDegenerate) {
  const RealIntegrand f = [](double x) { return x; };
  EXPECT_THROW(integrate_oscillatory(f, 2.0, 1.0, {}), DomainError);
  EXPECT_EQ(integrate_oscillatory(f, 1.0, 1.0, {}).value, Complex(0.0, 0.0));
}

TEST(Quadrature, VerticalLineCauchy) {
  // (1 / 2 pi i) * integral of e^{s} / s along Re s = 1 over a long window
  // approaches 1 (residue at 0); the truncated integral is within ~1/(pi U).
  const auto F = [](Complex s) { return std::exp(s) / s; };
  const FrequencyHint hint = [](double) { return 1.0 / kTwoPi; };
  const double U = 2000.0;
  const QuadratureResult r = integrate_vertical_line(F, 1.0, -U, U, hint, {});
  EXPECT_NEAR(r.value.real(), 1.0, 2.0 / U);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-9);
}

TEST(Summation, NeumaierAndPairwise) {
  NeumaierSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-25);
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
}
