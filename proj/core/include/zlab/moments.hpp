#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "zlab/quad.hpp"
#include "zlab/summation.hpp"

namespace zlab {

struct MomentResult {
  int k = 0;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double abs_err_est = 0.0;  // quadrature estimate plus model_err
  double model_err = 0.0;    // integrated Riemann-Siegel error model above t = 10
  long long panels = 0;
  long long evals = 0;
};

// Z(t)^k with Z from z_value.
double hardy_power(int k, double t);

// Breakpoints where z_value switches evaluator or Riemann-Siegel main-sum
// length: t = 10 and t = 2 pi n^2, restricted to (a, b).
std::vector<double> hardy_breakpoints(double a, double b);

// Integral of Z^k over [a, b], 1 <= a < b, 1 <= k <= 8, to absolute tol.
// The base options supply threads, budget and extra breakpoints.
MomentResult hardy_moment(int k, double a, double b, double tol = 1e-8,
                          const QuadOptions& base = {});

// Integral of |zeta(1/2 + i t)|^{2k} = Z^{2k} over [a, b], k in {1, 2}.
MomentResult abs_moment(int k, double a, double b, double tol = 1e-8, const QuadOptions& base = {});

// Piecewise-polynomial I_k(x) = integral of Z^k over [1, x]. Each panel is an
// accepted quadrature panel; the integrand's Legendre expansion from its 16
// Gauss values is integrated exactly, so I_k is available at any x.
class PrimitiveTable {
 public:
  static constexpr int kNodes = kPanelOrder;
  static constexpr double kCheckpointSpacing = 100.0;

  struct Panel {
    double a = 0.0;
    double b = 0.0;
    double i_left = 0.0;    // I_k(a)
    double err_left = 0.0;  // accumulated error estimate up to a
    double integral = 0.0;  // over the panel
    double err = 0.0;       // quadrature share plus Riemann-Siegel model error
    std::array<double, kNodes> f{};          // Z^k at the Gauss nodes
    std::array<double, kNodes> coef{};       // Legendre coefficients of the interpolant
    std::array<double, kNodes + 1> anti{};   // Legendre coefficients of the antiderivative
  };

  // Interpolated Z^k and I_k at x inside panel p.
  static double panel_integrand(const Panel& p, double x);
  static double panel_primitive(const Panel& p, double x);

  struct Checkpoint {
    double T = 0.0;
    double value = 0.0;
    double err = 0.0;
  };

  int k() const { return k_; }
  double end() const { return end_; }
  double tol_density() const { return tol_density_; }
  const std::vector<Panel>& panels() const { return panels_; }

  // I_k(x) for 1 <= x <= end(). Throws DomainError outside.
  double value(double x) const;
  // Degree-15 interpolant of Z^k at x (exact at the stored nodes up to rounding).
  double integrand(double x) const;
  // Accumulated quadrature error estimate on [1, x].
  double error_at(double x) const;
  // Index of the panel containing x.
  std::size_t locate(double x) const;
  // I_k(T) at T = 100, 200, ..., end().
  std::vector<Checkpoint> checkpoints() const;
  // max |I_k(x)| x^{-e} over panel nodes and ends with lo <= x <= hi.
  double sup_scaled(double e, double lo, double hi) const;

  // Builds I_k on [1, X'] with X' = X rounded up to a multiple of 100.
  // Segments [1, 10], [10, 100], [100, 200], ... are integrated independently
  // at a fixed tolerance density, so extending a table reproduces the same
  // panels bit for bit.
  static PrimitiveTable build(int k, double X, double tol_density, int threads = 1);
  // Copy of this table extended to cover X.
  PrimitiveTable extended(double X, int threads = 1) const;

 private:
  void append_segment_results(std::vector<std::vector<PanelLeaf>>& leaves,
                              const std::vector<double>& errs);
  static std::vector<double> segment_ends(double from, double to);

  int k_ = 0;
  double end_ = 1.0;
  double tol_density_ = 0.0;
  std::vector<Panel> panels_;
  NeumaierSum running_;  // state after the last panel, so extensions match a one-shot build
  double running_err_ = 0.0;
};

// Default per-unit-length tolerance used for cached tables.
double default_table_density(int k);

// Process-wide cache of primitive tables, one per k, grown on demand.
// Returned tables are immutable snapshots.
std::shared_ptr<const PrimitiveTable> primitive_table(int k, double X, int threads = 1);
// Drops every cached table (used to check thread-count independence).
void clear_primitive_tables();

// F(T) = I_1(T), served from the cached table. Throws AccuracyError when
// the table's accumulated error estimate at T exceeds tol.
double hardy_primitive_F(double T, double tol = 1e-2, int threads = 1);

// Checkpoint cache file: CSV with header "k,T,I,err", rows in increasing T,
// values in %.16e.
void save_checkpoints(const std::string& path, int k,
                      const std::vector<PrimitiveTable::Checkpoint>& cps);
std::vector<PrimitiveTable::Checkpoint> load_checkpoints(const std::string& path, int k);

}  // namespace zlab
