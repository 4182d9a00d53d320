#include "zlab/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "zlab/errors.hpp"
#include "zlab/parallel.hpp"
#include "zlab/summation.hpp"

namespace zlab {
namespace {

GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double magnitude(double v) { return std::abs(v); }
double magnitude(Complex v) { return std::abs(v); }
bool finite(double v) { return std::isfinite(v); }
bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
Complex to_complex(double v) { return Complex(v, 0.0); }
Complex to_complex(Complex v) { return v; }

template <class V>
struct PanelResult {
  V value{};
  double err = 0.0;
  long long leaves = 0;
  long long evals = 0;
  std::vector<PanelLeaf> leaf_data;
};

template <class V, class F>
class Engine {
 public:
  Engine(const F& f, const QuadOptions& opts, double density)
      : f_(f),
        opts_(opts),
        density_(density),
        g16_(gauss_legendre(kPanelOrder)),
        g8_(gauss_legendre(kEmbeddedOrder)) {}

  void refine(double l, double r, int depth, PanelResult<V>& out) {
    const double mid = 0.5 * (l + r);
    const double half = 0.5 * (r - l);
    std::array<V, kPanelOrder> vals;
    V s16{};
    for (int i = 0; i < kPanelOrder; ++i) {
      vals[i] = f_(mid + half * g16_.nodes[i]);
      s16 += g16_.weights[i] * vals[i];
    }
    V s8{};
    for (int i = 0; i < kEmbeddedOrder; ++i) s8 += g8_.weights[i] * f_(mid + half * g8_.nodes[i]);
    s16 *= half;
    s8 *= half;
    out.evals += kEvalsPerPanel;
    const long long used = evals_.fetch_add(kEvalsPerPanel) + kEvalsPerPanel;
    if (used > opts_.max_evals) exhausted_ = true;
    const double err = magnitude(s16 - s8);
    if (!finite(s16)) {
      std::ostringstream msg;
      msg << "quadrature: non-finite integrand on [" << l << ", " << r << "]";
      throw AccuracyError(msg.str());
    }
    if (err <= density_ * (r - l) || depth >= opts_.max_depth || exhausted_) {
      out.value += s16;
      out.err += err;
      out.leaves += 1;
      if (opts_.leaves != nullptr) {
        if constexpr (std::is_same_v<V, double>) {
          PanelLeaf leaf;
          leaf.a = l;
          leaf.b = r;
          std::copy(vals.begin(), vals.end(), leaf.f.begin());
          out.leaf_data.push_back(leaf);
        }
      }
      return;
    }
    refine(l, mid, depth + 1, out);
    refine(mid, r, depth + 1, out);
  }

  bool exhausted() const { return exhausted_; }

 private:
  const F& f_;
  const QuadOptions& opts_;
  double density_;
  const GaussRule& g16_;
  const GaussRule& g8_;
  std::atomic<long long> evals_{0};
  std::atomic<bool> exhausted_{false};
};

template <class V, class F>
QuadratureResult run(const F& f, double a, double b, const FrequencyHint& freq,
                     const QuadOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {};
    throw DomainError("quadrature: require a < b");
  }
  const std::vector<double> ends = panel_partition(a, b, freq, opts);
  const double density = opts.tol_density > 0.0 ? opts.tol_density : opts.tol / (b - a);
  Engine<V, F> engine(f, opts, density);
  const std::size_t n = ends.size() - 1;
  std::vector<PanelResult<V>> results(n);
  parallel_for(n, opts.threads, [&](std::size_t i) { engine.refine(ends[i], ends[i + 1], 0, results[i]); });

  std::vector<Complex> values(n);
  std::vector<double> errs(n);
  QuadratureResult out;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = to_complex(results[i].value);
    errs[i] = results[i].err;
    out.panels += results[i].leaves;
    out.evals += results[i].evals;
    if (opts.leaves != nullptr) {
      opts.leaves->insert(opts.leaves->end(), results[i].leaf_data.begin(), results[i].leaf_data.end());
    }
  }
  out.value = pairwise_sum(values);
  out.abs_err_est = pairwise_sum(errs);
  if (engine.exhausted() && out.abs_err_est > density * (b - a)) {
    std::ostringstream msg;
    msg << "quadrature: evaluation budget " << opts.max_evals << " exhausted on [" << a << ", " << b
        << "] with error estimate " << out.abs_err_est;
    throw BudgetError(msg.str(), out.value.real(), out.value.imag(), out.abs_err_est);
  }
  return out;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 64) throw DomainError("gauss_legendre: order must lie in [1, 64]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(n));
  return *slot;
}

FrequencyHint hardy_frequency(int k) {
  return [k](double t) { return k * theta_prime(std::max(t, 10.0)) / kTwoPi; };
}

std::vector<double> panel_partition(double a, double b, const FrequencyHint& freq,
                                    const QuadOptions& opts) {
  std::vector<double> cuts{a};
  std::vector<double> bps = opts.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double p : bps) {
    if (p > a && p < b && p > cuts.back()) cuts.push_back(p);
  }
  cuts.push_back(b);

  const double grid = opts.grid;
  std::vector<double> ends{a};
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    const double r = cuts[seg + 1];
    double x = cuts[seg];
    while (x < r) {
      double w = opts.max_panel;
      if (freq) {
        w = std::min(w, 0.25 / freq(x));
        w = std::min(w, 0.25 / freq(std::min(x + w, r)));
      }
      double end = x + w;
      if (grid > 0.0) {
        const double snapped = std::floor(end / grid) * grid;
        end = snapped > x + 1e-9 * grid ? snapped : std::floor(x / grid + 1.0 + 1e-9) * grid;
      }
      if (end >= r || r - end < 1e-9 * w) end = r;
      ends.push_back(end);
      x = end;
    }
  }
  return ends;
}

QuadratureResult integrate_oscillatory(const RealIntegrand& f, double a, double b,
                                       const FrequencyHint& freq, const QuadOptions& opts) {
  return run<double>(f, a, b, freq, opts);
}

QuadratureResult integrate_oscillatory(const ComplexIntegrand& f, double a, double b,
                                       const FrequencyHint& freq, const QuadOptions& opts) {
  return run<Complex>(f, a, b, freq, opts);
}

QuadratureResult integrate_vertical_line(const std::function<Complex(Complex)>& F, double c,
                                         double t0, double t1, const FrequencyHint& freq,
                                         const QuadOptions& opts) {
  const ComplexIntegrand g = [&](double t) { return F(Complex(c, t)) / kTwoPi; };
  return run<Complex>(g, t0, t1, freq, opts);
}

}  // namespace zlab
