#include "zlab/mellin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "zlab/errors.hpp"
#include "zlab/explicit_formula.hpp"
#include "zlab/hardy.hpp"
#include "zlab/summation.hpp"

namespace zlab {
namespace {

constexpr double kMaxSubpanelPhase = 3.0;  // radians of x^{-it} per sub-panel
constexpr double kBaseBand = 16.0;

void check_mellin_k(int k) {
  if (k < 1 || k > 4) throw DomainError("Mellin transforms are implemented for 1 <= k <= 4");
}

double band_for(double t) {
  double band = kBaseBand;
  while (band < std::abs(t)) band *= 2.0;
  return band;
}

// ---------------------------------------------------------------------------
// Node sums over the primitive tables.

class NodeEvaluator {
 public:
  NodeEvaluator(int k, NodeKind kind, double lo, double hi, double band)
      : k_(k), kind_(kind), lo_(lo), hi_(hi), band_(band) {
    build();
  }

  NodeSum evaluate(Complex p) {
    const bool flip = p.imag() < 0.0;
    const Complex q = flip ? std::conj(p) : p;
    const auto key = std::make_pair(q.real(), q.imag());
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return flip ? conj_sum(it->second) : it->second;
    }
    const std::shared_ptr<const std::vector<double>> scaled = scaled_weights(q.real());
    const double t = q.imag();
    const std::vector<double>& a = *scaled;
    double re16 = 0.0, im16 = 0.0, re8 = 0.0, im8 = 0.0;
    for (std::size_t i = 0; i < n16_; ++i) {
      const double ph = t * log_x_[i];
      re16 += a[i] * std::cos(ph);
      im16 -= a[i] * std::sin(ph);
    }
    for (std::size_t i = n16_; i < log_x_.size(); ++i) {
      const double ph = t * log_x_[i];
      re8 += a[i] * std::cos(ph);
      im8 -= a[i] * std::sin(ph);
    }
    NodeSum out;
    out.value = Complex(re16, im16);
    out.err = std::abs(out.value - Complex(re8, im8));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      memo_.emplace(key, out);
    }
    return flip ? conj_sum(out) : out;
  }

 private:
  static NodeSum conj_sum(NodeSum s) {
    s.value = std::conj(s.value);
    return s;
  }

  void build() {
    auto table = primitive_table(k_, hi_);
    const GaussRule& g16 = gauss_legendre(kPanelOrder);
    const GaussRule& g8 = gauss_legendre(kEmbeddedOrder);
    std::vector<double> l8, c8;
    for (const auto& p : table->panels()) {
      if (p.b <= lo_ || p.a >= hi_) continue;
      const double a = std::max(p.a, lo_);
      const double b = std::min(p.b, hi_);
      if (!(b > a)) continue;
      const int m = std::max(1, static_cast<int>(std::ceil(band_ * std::log(b / a) / kMaxSubpanelPhase)));
      const bool whole = (a == p.a && b == p.b && m == 1);
      for (int j = 0; j < m; ++j) {
        const double u0 = a + (b - a) * j / m;
        const double u1 = (j + 1 == m) ? b : a + (b - a) * (j + 1) / m;
        const double mid = 0.5 * (u0 + u1);
        const double half = 0.5 * (u1 - u0);
        for (int i = 0; i < kPanelOrder; ++i) {
          const double x = mid + half * g16.nodes[i];
          double payload;
          if (kind_ == NodeKind::integrand) {
            payload = whole ? p.f[i] : PrimitiveTable::panel_integrand(p, x);
          } else {
            payload = PrimitiveTable::panel_primitive(p, x);
          }
          log_x_.push_back(std::log(x));
          c_.push_back(half * g16.weights[i] * payload);
        }
        for (int i = 0; i < kEmbeddedOrder; ++i) {
          const double x = mid + half * g8.nodes[i];
          const double payload = kind_ == NodeKind::integrand ? PrimitiveTable::panel_integrand(p, x)
                                                              : PrimitiveTable::panel_primitive(p, x);
          l8.push_back(std::log(x));
          c8.push_back(half * g8.weights[i] * payload);
        }
      }
    }
    n16_ = log_x_.size();
    log_x_.insert(log_x_.end(), l8.begin(), l8.end());
    c_.insert(c_.end(), c8.begin(), c8.end());
  }

  std::shared_ptr<const std::vector<double>> scaled_weights(double sigma) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = scaled_.find(sigma);
    if (it != scaled_.end()) return it->second;
    auto v = std::make_shared<std::vector<double>>(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) (*v)[i] = c_[i] * std::exp(-sigma * log_x_[i]);
    if (scaled_.size() >= 32) scaled_.clear();
    scaled_.emplace(sigma, v);
    return v;
  }

  int k_;
  NodeKind kind_;
  double lo_, hi_, band_;
  std::vector<double> log_x_;
  std::vector<double> c_;
  std::size_t n16_ = 0;
  std::mutex mutex_;
  std::map<double, std::shared_ptr<const std::vector<double>>> scaled_;
  std::map<std::pair<double, double>, NodeSum> memo_;
};

using EvaluatorKey = std::tuple<int, int, double, double, double>;

struct EvaluatorRegistry {
  std::mutex mutex;
  std::map<EvaluatorKey, std::shared_ptr<NodeEvaluator>> evaluators;
};

EvaluatorRegistry& evaluator_registry() {
  static EvaluatorRegistry r;
  return r;
}

std::shared_ptr<NodeEvaluator> node_evaluator(int k, NodeKind kind, double lo, double hi, double band) {
  EvaluatorRegistry& r = evaluator_registry();
  std::lock_guard<std::mutex> lock(r.mutex);
  auto& slot = r.evaluators[EvaluatorKey{k, static_cast<int>(kind), lo, hi, band}];
  if (!slot) slot = std::make_shared<NodeEvaluator>(k, kind, lo, hi, band);
  return slot;
}

// ---------------------------------------------------------------------------
// Growth models.

GrowthModel fit_growth_model(int k) {
  GrowthModel g;
  g.k = k;
  auto table = primitive_table(k, kGrowthCalibrationEnd);
  if (k % 2 == 1) {
    g.exponent = (k == 1) ? 0.25 : 0.8;
    g.constant = 1.5 * table->sup_scaled(g.exponent, 1.0, kGrowthCalibrationEnd);
    g.fit_lo = 1.0;
    g.fit_hi = kGrowthCalibrationEnd;
    return g;
  }
  g.has_main_term = true;
  g.exponent = (k == 2) ? 0.5 : 0.75;
  g.fit_lo = kGrowthCalibrationEnd / 10.0;
  g.fit_hi = kGrowthCalibrationEnd;
  const int degree = (k == 2) ? 1 : 4;

  std::vector<double> xs, ys;
  for (const auto& p : table->panels()) {
    if (p.b >= g.fit_lo && p.b <= g.fit_hi) {
      xs.push_back(p.b);
      ys.push_back(p.i_left + p.integral);
    }
  }
  const int cols = degree + 2;
  Eigen::MatrixXd A(xs.size(), cols);
  Eigen::VectorXd y(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double L = std::log(xs[i]);
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j) {
      A(i, j) = xs[i] * pw;
      pw *= L;
    }
    A(i, degree + 1) = 1.0;
    y(i) = ys[i];
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (int j = 0; j < cols; ++j) A.col(j) /= scale(j);
  Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);
  for (int j = 0; j < cols; ++j) coef(j) /= scale(j);
  g.log_coeffs.assign(coef.data(), coef.data() + degree + 1);
  g.const_coeff = coef(degree + 1);

  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sup = std::max(sup, std::abs(ys[i] - g.main_term(xs[i])) * std::pow(xs[i], -g.exponent));
  }
  g.constant = 1.5 * sup;
  return g;
}

// ---------------------------------------------------------------------------
// Laplace transform of Z from the k = 1 table.

class LbarEvaluator {
 public:
  LbarEvaluator(double band, double y_max) {
    auto table = primitive_table(1, y_max);
    const GaussRule& g16 = gauss_legendre(kPanelOrder);
    for (const auto& p : table->panels()) {
      if (p.a >= y_max) break;
      const int m = std::max(1, static_cast<int>(std::ceil(band * (p.b - p.a) / kMaxSubpanelPhase)));
      for (int j = 0; j < m; ++j) {
        const double u0 = p.a + (p.b - p.a) * j / m;
        const double u1 = (j + 1 == m) ? p.b : p.a + (p.b - p.a) * (j + 1) / m;
        const double mid = 0.5 * (u0 + u1);
        const double half = 0.5 * (u1 - u0);
        for (int i = 0; i < kPanelOrder; ++i) {
          const double yv = mid + half * g16.nodes[i];
          y_.push_back(yv);
          panel_start_.push_back(p.a);
          c_.push_back(half * g16.weights[i] * (m == 1 ? p.f[i] : PrimitiveTable::panel_integrand(p, yv)));
        }
      }
    }
  }

  // Sum over nodes of panels starting below y_cut.
  double sum(double x, double y_cut) const {
    NeumaierSum s;
    for (std::size_t i = 0; i < y_.size() && panel_start_[i] < y_cut; ++i) {
      s.add(c_[i] * std::exp(-x * y_[i]));
    }
    return s.value();
  }

 private:
  std::vector<double> y_, panel_start_, c_;
};

struct LbarCache {
  std::mutex mutex;
  std::map<std::pair<double, double>, std::shared_ptr<const LbarEvaluator>> evaluators;  // (band, y_max)
  std::map<std::pair<double, double>, std::pair<double, double>> values;              // (x, y_max)
};

LbarCache& lbar_cache() {
  static LbarCache c;
  return c;
}

double envelope_bound(double t) {
  // |zeta(1/2 + it)| <= 0.732 t^{1/6} log t for t >= 3, and <= 1.461 below.
  if (t < 3.0) return 1.5;
  return std::max(1.5, 0.732 * std::pow(t, 1.0 / 6.0) * std::log(t));
}

}  // namespace

// ---------------------------------------------------------------------------

double GrowthModel::main_term(double x) const {
  if (!has_main_term) return 0.0;
  const double L = std::log(x);
  double poly = 0.0;
  for (std::size_t j = log_coeffs.size(); j-- > 0;) poly = poly * L + log_coeffs[j];
  return x * poly + const_coeff;
}

Complex GrowthModel::main_term_tail(Complex s, double X) const {
  if (!has_main_term) return 0.0;
  const Complex u = s - 1.0;
  if (u == Complex(0.0, 0.0)) throw PoleError("main-term tail has a pole at s = 1");
  const double L0 = std::log(X);
  const Complex front = std::exp(-u * L0);
  Complex total = 0.0;
  for (std::size_t j = 0; j < log_coeffs.size(); ++j) {
    // integral over [X, inf) of x^{-s} log^j x dx
    Complex J = 0.0;
    double falling = 1.0;  // j! / (j - i)!
    Complex upow = u;      // u^{i+1}
    for (std::size_t i = 0; i <= j; ++i) {
      J += falling * std::pow(L0, static_cast<double>(j - i)) / upow;
      falling *= static_cast<double>(j - i);
      upow *= u;
    }
    total += log_coeffs[j] * front * J;
  }
  total += const_coeff * std::exp(-s * L0) / s;
  return total;
}

double GrowthModel::tail_certificate(Complex s, double X) const {
  const double sigma = s.real();
  return std::abs(s) * constant * std::pow(X, exponent - sigma) / (sigma - exponent);
}

const GrowthModel& growth_model(int k) {
  check_mellin_k(k);
  static std::mutex mutex;
  static std::map<int, GrowthModel> models;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = models.find(k);
  if (it == models.end()) it = models.emplace(k, fit_growth_model(k)).first;
  return it->second;
}

NodeSum mellin_node_sum(int k, NodeKind kind, double lo, double hi, Complex p) {
  check_mellin_k(k);
  if (!(lo >= 1.0) || !(hi > lo)) throw DomainError("mellin_node_sum: require 1 <= lo < hi");
  return node_evaluator(k, kind, lo, hi, band_for(p.imag()))->evaluate(p);
}

void clear_mellin_caches() {
  {
    EvaluatorRegistry& r = evaluator_registry();
    std::lock_guard<std::mutex> lock(r.mutex);
    r.evaluators.clear();
  }
  LbarCache& c = lbar_cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  c.evaluators.clear();
  c.values.clear();
}

MellinSample mellin_direct(int k, Complex s, double X, double tol) {
  check_mellin_k(k);
  const double sigma = s.real();
  if (!(sigma > 1.1)) {
    std::ostringstream msg;
    msg << "mellin_direct: Re s = " << sigma << " is not in the absolute-convergence regime (> 1.1)";
    throw ConvergenceError(msg.str());
  }
  if (!(X >= 10.0)) throw DomainError("mellin_direct: X must be >= 10");
  const GrowthModel& g = growth_model(k);
  const NodeSum ns = mellin_node_sum(k, NodeKind::integrand, 1.0, X, s);

  MellinSample out;
  out.s = s;
  out.k = k;
  out.value = ns.value;
  out.X = X;
  out.quad_err = ns.err;
  out.model_err = primitive_table(k, X)->error_at(X);
  out.method = MellinMethod::direct;
  const double e = g.exponent;
  if (g.has_main_term) {
    // Z^k >= 0: the tail is at most the integral of Z^k x^{-sigma}, which by
    // parts is sigma * int_X^inf I_k x^{-sigma-1} - I_k(X) X^{-sigma}.
    const double i_x = primitive_table(k, X)->value(X);
    const double model = sigma * g.main_term_tail(Complex(sigma, 0.0), X).real();
    const double resid = sigma * g.constant * std::pow(X, e - sigma) / (sigma - e);
    out.tail_bound = std::max(0.0, model + resid - i_x * std::pow(X, -sigma));
  } else {
    out.tail_bound = g.constant * std::pow(X, e - sigma) * (1.0 + std::abs(s) / (sigma - e));
  }
  if (out.quad_err > tol) {
    std::ostringstream msg;
    msg << "mellin_direct: quadrature estimate " << out.quad_err << " exceeds tol " << tol;
    throw AccuracyError(msg.str());
  }
  return out;
}

MellinSample mellin_by_parts(int k, Complex s, double tol, const MellinOptions& opts) {
  check_mellin_k(k);
  const GrowthModel& g = growth_model(k);
  const double sigma = s.real();
  const double e = g.exponent;
  if (!(sigma > e + 0.05)) {
    std::ostringstream msg;
    msg << "mellin_by_parts: Re s = " << sigma << " outside the certified regime Re s > " << e + 0.05
        << " for k = " << k;
    throw ConvergenceError(msg.str());
  }
  const double X = opts.X;
  if (!(X >= 10.0)) throw DomainError("mellin_by_parts: X must be >= 10");

  const NodeSum ns = mellin_node_sum(k, NodeKind::primitive, 1.0, X, s + 1.0);
  MellinSample out;
  out.s = s;
  out.k = k;
  out.X = X;
  out.method = MellinMethod::by_parts;
  out.value = s * ns.value;
  out.quad_err = std::abs(s) * ns.err;
  out.model_err = std::abs(s) / sigma * primitive_table(k, X)->error_at(X);

  const double cert = g.tail_certificate(s, X);
  if (opts.tail == TailHandling::certified_model) {
    if (g.has_main_term) out.value += s * g.main_term_tail(s, X);
    out.tail_bound = cert;
  } else {
    const Complex boundary = primitive_table(k, X)->value(X) * std::exp(-s * std::log(X));
    out.value += boundary;
    if (g.has_main_term) {
      out.tail_bound = std::abs(s * g.main_term_tail(s, X) - boundary) + cert;
    } else {
      out.tail_bound = g.constant * std::pow(X, e - sigma) + cert;
    }
  }
  if (out.quad_err > tol) {
    std::ostringstream msg;
    msg << "mellin_by_parts: quadrature estimate " << out.quad_err << " exceeds tol " << tol;
    throw AccuracyError(msg.str());
  }
  return out;
}

Complex mellin_truncated(int k, Complex s, double X) {
  return mellin_node_sum(k, NodeKind::integrand, 1.0, X, s).value;
}

// ---------------------------------------------------------------------------
// Decomposition of M_3.

Complex v1_series(Complex s, std::int64_t N, const DivisorTable& table) {
  if (table.k != 3) throw DomainError("v1_series: needs a d_3 table");
  if (N > static_cast<std::int64_t>(table.limit)) {
    std::ostringstream msg;
    msg << "v1_series: need d_3(n) up to " << N << ", table has " << table.limit;
    throw CapacityError(msg.str());
  }
  const Complex expo = 1.0 / 6.0 + 2.0 * s / 3.0;
  NeumaierSumComplex sum;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    const double c = cos_cycles(1.5 * std::pow(dn, 2.0 / 3.0) + 1.0 / 16.0);
    sum.add(static_cast<double>(table[n]) * c * std::exp(-expo * std::log(dn)));
  }
  return std::exp((1.0 - s) * std::log(kTwoPi)) * std::sqrt(2.0 / 3.0) * sum.value();
}

Complex v1_series_smoothed(Complex s, std::int64_t N, const DivisorTable& table) {
  if (table.k != 3) throw DomainError("v1_series_smoothed: needs a d_3 table");
  if (N < 2) throw DomainError("v1_series_smoothed: N must be >= 2");
  if (2 * N > static_cast<std::int64_t>(table.limit)) throw CapacityError("v1_series_smoothed: table too short");
  const Complex expo = 1.0 / 6.0 + 2.0 * s / 3.0;
  auto smoothed = [&](std::int64_t M) {
    NeumaierSumComplex sum;
    for (std::int64_t n = 1; n < 2 * M; ++n) {
      const double dn = static_cast<double>(n);
      const double w = smoothing_rho(dn / static_cast<double>(M));
      if (w == 0.0) continue;
      const double c = cos_cycles(1.5 * std::pow(dn, 2.0 / 3.0) + 1.0 / 16.0);
      sum.add(w * static_cast<double>(table[n]) * c * std::exp(-expo * std::log(dn)));
    }
    return sum.value();
  };
  const Complex full = smoothed(N);
  const Complex half = smoothed(N / 2);
  const double alpha = 2.0 * s.real() / 3.0 - 5.0 / 6.0;
  Complex extrap = full;
  if (alpha > 0.0) {
    const double f = std::pow(2.0, alpha);
    extrap = (f * full - half) / (f - 1.0);
  }
  return std::exp((1.0 - s) * std::log(kTwoPi)) * std::sqrt(2.0 / 3.0) * extrap;
}

std::int64_t matched_cutoff(double X) { return cubic_upper(X); }

Complex v2_residual(Complex s, double X, const DivisorTable& table, double tol) {
  if (!(s.real() > 0.8)) throw ConvergenceError("v2_residual: requires Re s > 0.8");
  if (!(X >= 100.0)) throw DomainError("v2_residual: X must be >= 100");
  if (table.k != 3) throw DomainError("v2_residual: needs a d_3 table");
  const std::int64_t N = matched_cutoff(X);
  if (N > static_cast<std::int64_t>(table.limit)) throw CapacityError("v2_residual: table too short");

  // Jump points x_n = 2 pi n^{2/3} of the step function and its prefix sums.
  std::vector<double> jumps(N);
  std::vector<double> prefix(N + 1, 0.0);
  NeumaierSum acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double dn = static_cast<double>(n);
    jumps[n - 1] = kTwoPi * std::pow(dn, 2.0 / 3.0);
    acc.add(2.0 * static_cast<double>(table[n]) / std::sqrt(dn) * saddle_term(3, n).real());
    prefix[n] = acc.value();
  }
  auto step = [&](double x) {
    const auto idx = std::upper_bound(jumps.begin(), jumps.end(), x) - jumps.begin();
    return prefix[idx];
  };

  auto I3 = primitive_table(3, X);
  const double t = std::abs(s.imag());
  QuadOptions opts;
  opts.tol = tol;
  opts.breakpoints.assign(jumps.begin(), jumps.end());
  const FrequencyHint hardy = hardy_frequency(3);
  const FrequencyHint freq = [&](double x) { return hardy(x) + t / (kTwoPi * x); };
  const ComplexIntegrand f = [&](double x) {
    return (I3->value(x) - step(x)) * std::exp(-(s + 1.0) * std::log(x));
  };
  const QuadratureResult q = integrate_oscillatory(f, 1.0, X, freq, opts);
  const double r_end = I3->value(X) - cubic_primitive_approx(X, table);
  return s * q.value + r_end * std::exp(-s * std::log(X));
}

// ---------------------------------------------------------------------------
// Laurent expansion of M_2 at s = 1.

LaurentFit laurent_fit_at_1(const std::vector<std::pair<double, Complex>>& samples) {
  if (samples.size() < 3) throw DomainError("laurent_fit_at_1: need at least 3 samples");
  std::vector<double> ds;
  for (const auto& [d, v] : samples) {
    if (!(d >= 0.02 - 1e-12 && d <= 0.2 + 1e-12)) throw DomainError("laurent_fit_at_1: delta outside [0.02, 0.2]");
    if (std::find(ds.begin(), ds.end(), d) != ds.end()) throw DomainError("laurent_fit_at_1: repeated delta");
    ds.push_back(d);
  }
  const int n = static_cast<int>(samples.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double d = samples[i].first;
    A(i, 0) = 1.0 / (d * d);
    A(i, 1) = 1.0 / d;
    A(i, 2) = 1.0;
    y(i) = samples[i].second.real();
  }
  Eigen::Vector3d scale = A.colwise().norm().transpose();
  Eigen::MatrixXd As = A;
  for (int j = 0; j < 3; ++j) As.col(j) /= scale(j);
  Eigen::Vector3d cs = As.colPivHouseholderQr().solve(y);
  Eigen::Vector3d c = cs.cwiseQuotient(scale);

  LaurentFit fit;
  fit.c_m2 = c(0);
  fit.c_m1 = c(1);
  fit.c0 = c(2);
  const Eigen::VectorXd r = A * c - y;
  fit.residual = r.cwiseAbs().maxCoeff();
  if (n > 3) {
    const double s2 = r.squaredNorm() / (n - 3);
    const Eigen::Matrix3d cov = s2 * (A.transpose() * A).inverse();
    for (int j = 0; j < 3; ++j) fit.fit_error[j] = std::sqrt(std::max(0.0, cov(j, j)));
  }

  double smallest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) {
    const double cmag = std::abs(c(j));
    if (cmag == 0.0) continue;
    smallest = std::min(smallest, cmag * A.col(j).cwiseAbs().minCoeff());
  }
  if (fit.residual > 0.1 * smallest) {
    std::ostringstream msg;
    msg << "laurent_fit_at_1: residual " << fit.residual << " exceeds 10% of the smallest basis term "
        << smallest;
    throw FitError(msg.str());
  }
  return fit;
}

std::vector<std::pair<double, Complex>> laurent_samples(const std::vector<double>& deltas, double X) {
  std::vector<std::pair<double, Complex>> out;
  MellinOptions opts;
  opts.X = X;
  for (double d : deltas) {
    out.emplace_back(d, mellin_by_parts(2, Complex(1.0 + d, 0.0), 1e-6, opts).value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity checks.

Report check_convolution(int k, int r, Complex s, double c, double V, const ContourOptions& opts) {
  if (k < 2 || k > 4 || r < 1 || r >= k) throw DomainError("check_convolution: need 1 <= r < k <= 4");
  if (!(c > 1.0) || !(s.real() > c)) throw DomainError("check_convolution: need Re s > c > 1");
  const double X = opts.X;

  MellinOptions mo;
  mo.X = X;
  mo.tail = TailHandling::boundary_term;
  const MellinSample lhs = mellin_by_parts(k, s, 1e-6, mo);

  double rhs_node_err = 0.0;
  std::mutex err_mutex;
  const auto F = [&](Complex w) {
    const NodeSum a = mellin_node_sum(k - r, NodeKind::integrand, 1.0, X, w);
    const NodeSum b = mellin_node_sum(r, NodeKind::integrand, 1.0, X, 1.0 - w + s);
    {
      std::lock_guard<std::mutex> lock(err_mutex);
      rhs_node_err = std::max(rhs_node_err, std::abs(a.value) * b.err + std::abs(b.value) * a.err);
    }
    return a.value * b.value;
  };
  QuadOptions q;
  q.tol_density = opts.tol / 400.0;
  q.max_panel = 0.25;
  q.grid = 0.25;
  q.threads = opts.threads;
  const double f_log = std::log(X) / kTwoPi;
  const QuadratureResult res =
      integrate_vertical_line(F, c, -V, V, [f_log](double) { return f_log; }, q);

  const double edge = 0.5 * (std::abs(F(Complex(c, V))) + std::abs(F(Complex(c, -V))));

  Report rep;
  rep.name = "convolution";
  rep.lhs = lhs.value;
  rep.rhs = res.value;
  rep.set_gap();
  rep.cert("rhs_quadrature", res.abs_err_est)
      .cert("rhs_node_sum", rhs_node_err * V / kPi)
      .cert("contour_truncation_estimate", edge * V / kPi)
      .cert("lhs_quadrature", lhs.quad_err)
      .cert("lhs_tail_to_untruncated", lhs.tail_bound);
  rep.param("k", k).param("r", r).param("s_re", s.real()).param("s_im", s.imag());
  rep.param("c", c).param("V", V).param("X", X).param("panels", static_cast<double>(res.panels));
  return rep;
}

Report check_square_identity(int k, Complex s, double X, double tol, int threads) {
  check_mellin_k(k);
  if (!(s.real() > 2.0)) throw DomainError("check_square_identity: requires Re s > 2");
  const MellinSample m = mellin_direct(k, s, kDefaultMellinX);
  const Complex lhs = m.value * m.value;

  const FrequencyHint hk = hardy_frequency(k);
  auto table = primitive_table(k, X);
  auto inner = [&](double x) -> double {
    const double lo = std::sqrt(x);
    if (!(x > lo)) return 0.0;
    QuadOptions qi;
    qi.tol = tol;
    qi.threads = 1;
    for (double p : hardy_breakpoints(lo, x)) qi.breakpoints.push_back(p);
    for (double p : hardy_breakpoints(1.0, lo)) qi.breakpoints.push_back(x / p);
    const FrequencyHint fi = [&](double u) { return hk(u) + hk(x / u) * x / (u * u); };
    const RealIntegrand g = [&](double u) { return table->integrand(u) * table->integrand(x / u) / u; };
    return integrate_oscillatory(g, lo, x, fi, qi).value.real();
  };
  QuadOptions qo;
  qo.tol = tol;
  qo.threads = threads;
  qo.breakpoints = hardy_breakpoints(1.0, X);
  const double t = std::abs(s.imag());
  const FrequencyHint fo = [&](double x) { return hk(x) + t / (kTwoPi * x); };
  const ComplexIntegrand outer = [&](double x) { return 2.0 * inner(x) * std::exp(-s * std::log(x)); };
  const QuadratureResult res = integrate_oscillatory(outer, 1.0, X, fo, qo);

  // Envelope of the omitted outer range: 2 x^{-sigma} B(x)^k B(sqrt x)^k log(x) / 2,
  // integrated in log x by the trapezoid rule up to X * 1e8.
  const double sigma = s.real();
  double envelope = 0.0;
  const double h = 0.01;
  for (double L = std::log(X); L < std::log(X) + std::log(1e8); L += h) {
    const double x = std::exp(L);
    envelope += h * x * std::pow(x, -sigma) * std::pow(envelope_bound(x) * envelope_bound(std::sqrt(x)), k) * L;
  }

  Report rep;
  rep.name = "square_identity";
  rep.lhs = lhs;
  rep.rhs = res.value;
  rep.set_gap();
  rep.cert("lhs_tail", 2.0 * std::abs(m.value) * m.tail_bound + m.tail_bound * m.tail_bound)
      .cert("lhs_quadrature", 2.0 * std::abs(m.value) * m.quad_err)
      .cert("rhs_quadrature", res.abs_err_est)
      .cert("rhs_outer_tail_envelope", envelope);
  rep.param("k", k).param("s_re", s.real()).param("s_im", s.imag()).param("X", X);
  rep.param("outer_panels", static_cast<double>(res.panels));
  return rep;
}

InversionResult truncated_inversion(int k, double x, double c, double U, const ContourOptions& opts) {
  check_mellin_k(k);
  if (!(c > 1.0)) throw DomainError("truncated_inversion: requires c > 1");
  if (!(U >= 4.0 * x)) throw DomainError("truncated_inversion: requires U >= 4x");
  if (!(x >= 1.0) || !(x < opts.X)) throw DomainError("truncated_inversion: requires 1 <= x < X");
  const double X = opts.X;
  auto table = primitive_table(k, X);
  const double i_end = table->value(X);
  const double log_x = std::log(x);
  const double log_X = std::log(X);
  const auto F = [&](Complex s) {
    const NodeSum ns = mellin_node_sum(k, NodeKind::primitive, 1.0, X, s + 1.0);
    const Complex m = s * ns.value + i_end * std::exp(-s * log_X);
    return std::exp((s - 1.0) * log_x) * m;
  };
  QuadOptions q;
  q.tol_density = opts.tol / 800.0;
  q.max_panel = 0.25;
  q.grid = 0.25;
  q.threads = opts.threads;
  const double f_log = log_X / kTwoPi;
  const QuadratureResult res = integrate_vertical_line(F, c, -U, U, [f_log](double) { return f_log; }, q);
  InversionResult out;
  out.value = res.value.real();
  out.imag = res.value.imag();
  out.quad_err = res.abs_err_est;
  if (std::abs(out.imag) > 10.0 * out.quad_err + 1e-12) {
    std::ostringstream msg;
    msg << "truncated_inversion: imaginary part " << out.imag << " exceeds 10x the quadrature estimate";
    throw AccuracyError(msg.str());
  }
  return out;
}

std::pair<double, double> laplace_lbar(double x, double y_max) {
  if (!(x > 0.0)) throw DomainError("laplace_lbar: x must be positive");
  LbarCache& cache = lbar_cache();
  const auto key = std::make_pair(x, y_max);
  double band = 1.0;
  while (band < x) band *= 2.0;
  std::shared_ptr<const LbarEvaluator> ev;
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.values.find(key);
    if (it != cache.values.end()) return it->second;
    auto& slot = cache.evaluators[std::make_pair(band, y_max)];
    if (!slot) slot = std::make_shared<const LbarEvaluator>(band, y_max);
    ev = slot;
  }
  const double y_cut = std::min(y_max, 1.0 + 45.0 / x);
  const double value = ev->sum(x, y_cut);
  // |int_Y^inf Z e^{-xy}| <= |F(Y)| e^{-xY} + x int_Y^inf |F| e^{-xy} <= 2 C Y^{1/4} e^{-xY}
  // for xY >= 1, with |F(y)| <= C y^{1/4}.
  const double C = growth_model(1).constant;
  const double cert = 2.0 * C * std::pow(y_cut, 0.25) * std::exp(-x * y_cut) * std::max(1.0, 1.0 / (x * y_cut));
  const auto result = std::make_pair(value, cert);
  std::lock_guard<std::mutex> lock(cache.mutex);
  cache.values.emplace(key, result);
  return result;
}

Report laplace_consistency(Complex s, double y_max, int threads) {
  const double sigma = s.real();
  if (!(sigma > 1.0 && sigma < 3.0)) throw DomainError("laplace_consistency: requires 1 < Re s < 3");
  const double x_min = 45.0 / (y_max - 1.0);
  const double x_max = 40.0;

  double lbar_cert = 0.0;
  std::mutex cert_mutex;
  const ComplexIntegrand f = [&](double u) {
    const double x = std::exp(u);
    const auto [v, cert] = laplace_lbar(x, y_max);
    const Complex w = std::exp(s * u);
    {
      std::lock_guard<std::mutex> lock(cert_mutex);
      lbar_cert = std::max(lbar_cert, cert * std::abs(w));
    }
    return v * w;
  };
  QuadOptions q;
  q.tol_density = 1e-12;
  q.max_panel = 0.25;
  q.grid = 0.25;
  q.threads = threads;
  const double t = std::abs(s.imag());
  const QuadratureResult res = integrate_oscillatory(
      f, std::log(x_min), std::log(x_max), [t](double) { return t / kTwoPi + 0.1; }, q);

  MellinOptions mo;
  mo.X = y_max;
  const MellinSample m = mellin_by_parts(1, s, 1e-6, mo);
  const Complex gam = gamma_complex(s);
  const GrowthModel& g = growth_model(1);

  Report rep;
  rep.name = "laplace_mellin";
  rep.lhs = res.value;
  rep.rhs = m.value * gam;
  rep.set_gap();
  const double small_x = g.constant * std::tgamma(1.25) * std::pow(x_min, sigma - 0.25) / (sigma - 0.25);
  // |Lbar(x)| <= e^{-x} max|Z| / x beyond x_max with max|Z| <= 1.5 near y = 1.
  const double large_x = 1.5 * std::exp(-x_max) * std::pow(x_max, sigma - 2.0) * 2.0;
  rep.cert("lhs_quadrature", res.abs_err_est)
      .cert("lhs_small_x", small_x)
      .cert("lhs_large_x", large_x)
      .cert("lhs_inner_truncation", lbar_cert * (std::log(x_max) - std::log(x_min)))
      .cert("rhs_tail", m.tail_bound * std::abs(gam))
      .cert("rhs_quadrature", m.quad_err * std::abs(gam));
  rep.param("s_re", s.real()).param("s_im", s.imag()).param("y_max", y_max).param("x_min", x_min);
  rep.param("x_max", x_max);
  return rep;
}

Report check_mean_square(double sigma, double T, double a, double b) {
  if (!(a >= 1.0 && b > a && T > 0.0)) throw DomainError("check_mean_square: need 1 <= a < b, T > 0");
  double node_err = 0.0;
  const RealIntegrand lhs_f = [&](double t) {
    const NodeSum ns = mellin_node_sum(1, NodeKind::integrand, a, b, Complex(sigma, t));
    node_err = std::max(node_err, 2.0 * std::abs(ns.value) * ns.err);
    return std::norm(ns.value);
  };
  QuadOptions q;
  q.tol = 1e-10;
  const double f_log = std::log(b / a) / kPi;
  const QuadratureResult lhs = integrate_oscillatory(lhs_f, 0.0, T, [f_log](double) { return f_log; }, q);

  QuadOptions qr;
  qr.tol = 1e-10;
  qr.breakpoints = hardy_breakpoints(a, b);
  const RealIntegrand rhs_f = [&](double x) { return hardy_power(2, x) * std::pow(x, 1.0 - 2.0 * sigma); };
  const QuadratureResult rhs = integrate_oscillatory(rhs_f, a, b, hardy_frequency(2), qr);

  Report rep;
  rep.name = "mean_square_inequality";
  rep.lhs = lhs.value;
  rep.rhs = kTwoPi * rhs.value;
  rep.set_gap();
  const double slack = lhs.abs_err_est + node_err * T + kTwoPi * rhs.abs_err_est;
  rep.cert("lhs_quadrature", lhs.abs_err_est)
      .cert("lhs_node_sum", node_err * T)
      .cert("rhs_quadrature", kTwoPi * rhs.abs_err_est);
  rep.param("sigma", sigma).param("T", T).param("a", a).param("b", b);
  rep.passed = lhs.value.real() <= rep.rhs.real() + slack;
  return rep;
}

}  // namespace zlab
