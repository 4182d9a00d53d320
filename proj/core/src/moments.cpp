#include "zlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "zlab/errors.hpp"
#include "zlab/hardy.hpp"
#include "zlab/parallel.hpp"
#include "zlab/summation.hpp"

namespace zlab {
namespace {

void check_k(int k) {
  if (k < 1 || k > 8) throw DomainError("moment order k must lie in [1, 8]");
}

// P_0..P_n at u.
template <std::size_t N>
void legendre_values(double u, std::array<double, N>& p) {
  p[0] = 1.0;
  if (N > 1) p[1] = u;
  for (std::size_t m = 2; m < N; ++m) {
    p[m] = ((2.0 * m - 1.0) * u * p[m - 1] - (m - 1.0) * p[m - 2]) / m;
  }
}

// Legendre coefficients of the degree-15 interpolant through the Gauss values.
std::array<double, PrimitiveTable::kNodes> legendre_coefficients(
    const std::array<double, PrimitiveTable::kNodes>& f) {
  constexpr int n = PrimitiveTable::kNodes;
  const GaussRule& g = gauss_legendre(n);
  std::array<double, n> a{};
  std::array<double, n> p{};
  for (int i = 0; i < n; ++i) {
    legendre_values(g.nodes[i], p);
    for (int m = 0; m < n; ++m) a[m] += g.weights[i] * f[i] * p[m];
  }
  for (int m = 0; m < n; ++m) a[m] *= (2.0 * m + 1.0) / 2.0;
  return a;
}

// Antiderivative in x (vanishing at the panel's left end) expressed in the
// local variable u in [-1, 1].
std::array<double, PrimitiveTable::kNodes + 1> antiderivative_coefficients(
    const std::array<double, PrimitiveTable::kNodes>& a, double half) {
  constexpr int n = PrimitiveTable::kNodes;
  // int_{-1}^u P_0 = P_1 + P_0, int_{-1}^u P_m = (P_{m+1} - P_{m-1}) / (2m + 1).
  std::array<double, n + 1> A{};
  A[0] += a[0];
  A[1] += a[0];
  for (int m = 1; m < n; ++m) {
    A[m + 1] += a[m] / (2.0 * m + 1.0);
    A[m - 1] -= a[m] / (2.0 * m + 1.0);
  }
  for (double& c : A) c *= half;
  return A;
}

struct Registry {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const PrimitiveTable>> tables;
};

Registry& registry() {
  static Registry r;
  return r;
}

// Integrated Riemann-Siegel model error k |Z|^{k-1} err_est(t) over accepted
// panels, with |Z| recovered from the stored Z^k values.
double rs_model_error(int k, const PanelLeaf& leaf) {
  if (leaf.b <= kRsCutoff) return 0.0;
  const GaussRule& g = gauss_legendre(kPanelOrder);
  const double half = 0.5 * (leaf.b - leaf.a);
  const double mid = 0.5 * (leaf.a + leaf.b);
  double total = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) {
    const double t = mid + half * g.nodes[i];
    if (t < kRsCutoff) continue;
    const double z = std::pow(std::abs(leaf.f[i]), 1.0 / k);
    total += g.weights[i] * k * std::pow(z, k - 1) * kRsErrorConstants[3] * std::pow(t, -2.25);
  }
  return half * total;
}

}  // namespace

double hardy_power(int k, double t) {
  const double z = z_value(t);
  double r = z;
  for (int j = 1; j < k; ++j) r *= z;
  return r;
}

std::vector<double> hardy_breakpoints(double a, double b) {
  std::vector<double> out;
  if (a < kRsCutoff && b > kRsCutoff) out.push_back(kRsCutoff);
  for (int n = 2;; ++n) {
    const double p = kTwoPi * n * n;
    if (p >= b) break;
    if (p > a && p > kRsCutoff) out.push_back(p);
  }
  return out;
}

MomentResult hardy_moment(int k, double a, double b, double tol, const QuadOptions& base) {
  check_k(k);
  if (!(a >= 1.0) || !(a < b)) throw DomainError("hardy_moment: require 1 <= a < b");
  QuadOptions opts = base;
  opts.tol = tol;
  opts.tol_density = 0.0;
  for (double p : hardy_breakpoints(a, b)) opts.breakpoints.push_back(p);
  std::vector<PanelLeaf> leaves;
  opts.leaves = &leaves;
  const RealIntegrand f = [k](double t) { return hardy_power(k, t); };
  const QuadratureResult q = integrate_oscillatory(f, a, b, hardy_frequency(k), opts);
  std::vector<double> model(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) model[i] = rs_model_error(k, leaves[i]);
  MomentResult out;
  out.k = k;
  out.a = a;
  out.b = b;
  out.value = q.value.real();
  out.model_err = pairwise_sum(model);
  out.abs_err_est = q.abs_err_est + out.model_err;
  out.panels = q.panels;
  out.evals = q.evals;
  return out;
}

MomentResult abs_moment(int k, double a, double b, double tol, const QuadOptions& base) {
  if (k != 1 && k != 2) throw DomainError("abs_moment: k must be 1 or 2");
  MomentResult r = hardy_moment(2 * k, a, b, tol, base);
  r.k = k;
  return r;
}

double default_table_density(int k) {
  // Z^k grows roughly like (log t)^k on average; the density is absolute.
  if (k == 1) return 1e-11;
  return k == 2 ? 1e-10 : (k <= 4 ? 1e-9 : 1e-7);
}

std::vector<double> PrimitiveTable::segment_ends(double from, double to) {
  std::vector<double> ends{from};
  double x = from;
  while (x < to) {
    double next;
    if (x < 10.0) {
      next = 10.0;
    } else if (x < kCheckpointSpacing) {
      next = kCheckpointSpacing;
    } else {
      next = std::floor(x / kCheckpointSpacing + 1.0 + 1e-9) * kCheckpointSpacing;
    }
    ends.push_back(next);
    x = next;
  }
  return ends;
}

PrimitiveTable PrimitiveTable::build(int k, double X, double tol_density, int threads) {
  check_k(k);
  PrimitiveTable table;
  table.k_ = k;
  table.end_ = 1.0;
  table.tol_density_ = tol_density;
  return table.extended(X, threads);
}

PrimitiveTable PrimitiveTable::extended(double X, int threads) const {
  PrimitiveTable out = *this;
  if (X <= end_) return out;
  const std::vector<double> ends = segment_ends(end_, X);
  const std::size_t n = ends.size() - 1;
  std::vector<std::vector<PanelLeaf>> leaves(n);
  std::vector<double> errs(n);
  const int k = k_;
  const double density = tol_density_;
  parallel_for(n, threads, [&](std::size_t i) {
    QuadOptions opts;
    opts.tol_density = density;
    opts.max_depth = 3;  // initial panels are a quarter period; deeper splits only chase rounding noise
    opts.breakpoints = hardy_breakpoints(ends[i], ends[i + 1]);
    opts.leaves = &leaves[i];
    opts.threads = 1;
    const RealIntegrand f = [k](double t) { return hardy_power(k, t); };
    const QuadratureResult q = integrate_oscillatory(f, ends[i], ends[i + 1], hardy_frequency(k), opts);
    errs[i] = q.abs_err_est;
  });
  out.append_segment_results(leaves, errs);
  out.end_ = ends.back();
  return out;
}

void PrimitiveTable::append_segment_results(std::vector<std::vector<PanelLeaf>>& leaves,
                                            const std::vector<double>& errs) {
  NeumaierSum cum = running_;
  double err_cum = running_err_;
  for (std::size_t s = 0; s < leaves.size(); ++s) {
    // Segment error estimates are spread over its panels by width.
    const double seg_a = leaves[s].front().a;
    const double seg_b = leaves[s].back().b;
    for (const PanelLeaf& leaf : leaves[s]) {
      Panel p;
      p.a = leaf.a;
      p.b = leaf.b;
      p.f = leaf.f;
      p.coef = legendre_coefficients(leaf.f);
      p.anti = antiderivative_coefficients(p.coef, 0.5 * (leaf.b - leaf.a));
      // P_j(1) = 1, so the panel integral is the coefficient sum.
      double total = 0.0;
      for (double c : p.anti) total += c;
      p.integral = total;
      p.i_left = cum.value();
      p.err_left = err_cum;
      p.err = errs[s] * (p.b - p.a) / (seg_b - seg_a) + rs_model_error(k_, leaf);
      cum.add(p.integral);
      err_cum += p.err;
      panels_.push_back(p);
    }
  }
  running_ = cum;
  running_err_ = err_cum;
}

std::size_t PrimitiveTable::locate(double x) const {
  if (!(x >= 1.0) || x > end_) {
    std::ostringstream msg;
    msg << "primitive table (k = " << k_ << ") covers [1, " << end_ << "], requested " << x;
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(panels_.begin(), panels_.end(), x,
                             [](double v, const Panel& p) { return v < p.a; });
  if (it == panels_.begin()) return 0;
  return static_cast<std::size_t>(it - panels_.begin()) - 1;
}

double PrimitiveTable::panel_integrand(const Panel& p, double x) {
  const double u = (2.0 * x - p.a - p.b) / (p.b - p.a);
  std::array<double, kNodes> leg{};
  legendre_values(u, leg);
  double s = 0.0;
  for (int j = 0; j < kNodes; ++j) s += p.coef[j] * leg[j];
  return s;
}

double PrimitiveTable::panel_primitive(const Panel& p, double x) {
  const double u = (2.0 * x - p.a - p.b) / (p.b - p.a);
  std::array<double, kNodes + 1> leg{};
  legendre_values(u, leg);
  double s = 0.0;
  for (int j = 0; j <= kNodes; ++j) s += p.anti[j] * leg[j];
  return p.i_left + s;
}

double PrimitiveTable::value(double x) const {
  if (x == 1.0 && !panels_.empty()) return 0.0;
  return panel_primitive(panels_[locate(x)], x);
}

double PrimitiveTable::integrand(double x) const { return panel_integrand(panels_[locate(x)], x); }

double PrimitiveTable::error_at(double x) const {
  const Panel& p = panels_[locate(x)];
  return p.err_left + p.err * std::clamp((x - p.a) / (p.b - p.a), 0.0, 1.0);
}

std::vector<PrimitiveTable::Checkpoint> PrimitiveTable::checkpoints() const {
  std::vector<Checkpoint> out;
  for (double T = kCheckpointSpacing; T <= end_ + 1e-9; T += kCheckpointSpacing) {
    out.push_back({T, value(T), error_at(T)});
  }
  return out;
}

double PrimitiveTable::sup_scaled(double e, double lo, double hi) const {
  const GaussRule& g = gauss_legendre(kNodes);
  double best = 0.0;
  for (const Panel& p : panels_) {
    if (p.b < lo || p.a > hi) continue;
    const double half = 0.5 * (p.b - p.a);
    const double mid = 0.5 * (p.a + p.b);
    auto consider = [&](double x) {
      if (x < lo || x > hi) return;
      best = std::max(best, std::abs(value(x)) * std::pow(x, -e));
    };
    consider(p.a);
    for (int i = 0; i < kNodes; ++i) consider(mid + half * g.nodes[i]);
  }
  return best;
}

std::shared_ptr<const PrimitiveTable> primitive_table(int k, double X, int threads) {
  check_k(k);
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  auto& slot = r.tables[k];
  if (!slot) {
    slot = std::make_shared<const PrimitiveTable>(
        PrimitiveTable::build(k, X, default_table_density(k), threads));
  } else if (slot->end() < X) {
    slot = std::make_shared<const PrimitiveTable>(slot->extended(X, threads));
  }
  return slot;
}

void clear_primitive_tables() {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  r.tables.clear();
}

double hardy_primitive_F(double T, double tol, int threads) {
  if (!(T >= 1.0)) throw DomainError("hardy_primitive_F: T must be >= 1");
  if (T == 1.0) return 0.0;
  auto table = primitive_table(1, T, threads);
  if (table->error_at(T) > tol) {
    std::ostringstream msg;
    msg << "hardy_primitive_F: error estimate " << table->error_at(T) << " exceeds " << tol;
    throw AccuracyError(msg.str());
  }
  return table->value(T);
}

void save_checkpoints(const std::string& path, int k,
                      const std::vector<PrimitiveTable::Checkpoint>& cps) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "k,T,I,err\n";
  char buf[128];
  for (const auto& c : cps) {
    std::snprintf(buf, sizeof buf, "%d,%.16e,%.16e,%.16e\n", k, c.T, c.value, c.err);
    out << buf;
  }
}

std::vector<PrimitiveTable::Checkpoint> load_checkpoints(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "k,T,I,err") throw Error(path + ": unexpected header");
  std::vector<PrimitiveTable::Checkpoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int row_k = 0;
    PrimitiveTable::Checkpoint c;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &row_k, &c.T, &c.value, &c.err) != 4) {
      throw Error(path + ": malformed row '" + line + "'");
    }
    if (row_k == k) out.push_back(c);
  }
  return out;
}

}  // namespace zlab
