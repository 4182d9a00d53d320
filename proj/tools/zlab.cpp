// zlab command line front end.
//
// Exit codes:
//   0  success
//   1  a verification check failed
//   2  usage error or a request outside an operation's domain
//   3  accuracy, budget, capacity or fit failure

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zlab/arith.hpp"
#include "zlab/config.hpp"
#include "zlab/errors.hpp"
#include "zlab/explicit_formula.hpp"
#include "zlab/hardy.hpp"
#include "zlab/mellin.hpp"
#include "zlab/moments.hpp"
#include "zlab/verify.hpp"

using namespace zlab;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void emit(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
      }
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

// "a:b:n" -> n points from a to b inclusive; "a" -> one point.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double a = std::stod(parts[0]);
      const double b = std::stod(parts[1]);
      const int n = std::stoi(parts[2]);
      if (n < 1) throw DomainError("grid '" + spec + "' needs n >= 1");
      if (n == 1) return {a};
      std::vector<double> out;
      for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
      return out;
    }
  } catch (const std::logic_error&) {
  }
  throw DomainError("grid '" + spec + "' is not of the form a:b:n");
}

struct Globals {
  std::string config_path;
  int threads = 0;
  std::string format;
  std::string cache_dir;
  long long seed = -1;
};

RunConfig resolve(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path, cfg);
  apply_environment(cfg);
  if (g.threads > 0) cfg.threads = g.threads;
  if (!g.format.empty()) cfg.format = g.format;
  if (!g.cache_dir.empty()) cfg.cache_dir = g.cache_dir;
  if (g.seed >= 0) cfg.seed = static_cast<std::uint64_t>(g.seed);
  return cfg;
}

void save_table_checkpoints(const RunConfig& cfg, int k, const PrimitiveTable& table) {
  if (cfg.cache_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.cache_dir, ec);
  if (ec) return;
  const std::string path = cfg.cache_dir + "/I" + std::to_string(k) + "_checkpoints.csv";
  save_checkpoints(path, k, table.checkpoints());
}

// --- z ---------------------------------------------------------------------

struct ZArgs {
  double from = 0.0, to = 0.0, step = 0.0;
  bool oracle = false;
  int corrections = 3;
};

int cmd_z(const ZArgs& a, const RunConfig& cfg) {
  if (!(a.from < a.to) || !(a.step > 0.0) || a.from < 0.0) {
    throw CLI::ValidationError("z", "need 0 <= from < to and step > 0");
  }
  Table t;
  t.columns = {"t", "Z", "err_est", "method"};
  if (a.oracle) t.columns.push_back("Z_oracle");
  const long long n = static_cast<long long>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;
  for (long long i = 0; i < n; ++i) {
    const double x = a.from + static_cast<double>(i) * a.step;
    ZSample s = x >= kRsCutoff ? z_rs(x, a.corrections) : z_oracle_sample(x);
    std::vector<Cell> row = {x, s.value, s.err_est, std::string(x >= kRsCutoff ? "rs" : "oracle")};
    if (a.oracle) row.emplace_back(z_oracle(x));
    t.rows.push_back(row);
  }
  emit(t, cfg.format, std::cout);
  return kOk;
}

// --- moment ----------------------------------------------------------------

struct MomentArgs {
  int k = 2;
  double T = 0.0;
  std::string mode = "both";
  double tol = 0.0;
};

int cmd_moment(const MomentArgs& a, const RunConfig& cfg) {
  if (!(a.T >= 1.0)) throw CLI::ValidationError("moment", "T must be >= 1");
  const bool want_direct = a.mode != "explicit";
  const bool want_explicit = a.mode != "direct";
  if (want_explicit && a.k > 4) throw CLI::ValidationError("moment", "explicit mode needs k <= 4");

  Table t;
  t.columns = {"k", "T"};
  std::vector<Cell> row = {static_cast<long long>(a.k), a.T};
  double lhs = 0.0, rhs = 0.0;
  if (want_direct) {
    QuadOptions base;
    base.threads = cfg.threads;
    base.max_evals = cfg.max_evals;
    const MomentResult m = hardy_moment(a.k, a.T, 2.0 * a.T, a.tol > 0.0 ? a.tol : cfg.tol_moment, base);
    lhs = m.value;
    t.columns.insert(t.columns.end(), {"lhs", "lhs_err"});
    row.insert(row.end(), {m.value, m.abs_err_est});
    if (a.k <= 4) save_table_checkpoints(cfg, a.k, *primitive_table(a.k, 2.0 * a.T, cfg.threads));
  }
  if (want_explicit) {
    const DivisorTable dk = divisor_sieve(a.k, static_cast<std::uint64_t>(std::max<std::int64_t>(1, main_term_upper(a.k, a.T))));
    const CosineSumResult c = moment_main_term(a.k, a.T, dk);
    rhs = c.value;
    t.columns.insert(t.columns.end(), {"rhs", "terms"});
    row.insert(row.end(), {c.value, static_cast<long long>(c.terms)});
  }
  if (want_direct && want_explicit) {
    const double res = lhs - rhs;
    t.columns.insert(t.columns.end(), {"residual", "residual_over_T_k4"});
    row.insert(row.end(), {res, res / std::pow(a.T, a.k / 4.0)});
  }
  t.rows.push_back(row);
  emit(t, cfg.format, std::cout);
  return kOk;
}

// --- mellin ----------------------------------------------------------------

struct MellinArgs {
  int k = 1;
  std::string sigma = "2";
  std::string t = "0";
  std::string method = "by_parts";
  double X = kDefaultMellinX;
  bool laurent = false;
  bool decompose = false;
};

int cmd_mellin(const MellinArgs& a, const RunConfig& cfg) {
  primitive_table(a.k, std::max(a.X, kGrowthCalibrationEnd), cfg.threads);
  if (a.laurent) {
    if (a.k != 2) throw CLI::ValidationError("mellin", "--laurent needs k = 2");
    const std::vector<double> deltas = {0.02, 0.03, 0.05, 0.08, 0.12, 0.2};
    const LaurentFit f = laurent_fit_at_1(laurent_samples(deltas, a.X));
    Table t;
    t.columns = {"c_minus2", "c_minus1", "c0", "residual", "err_c_minus2", "err_c_minus1", "err_c0"};
    t.rows.push_back({f.c_m2, f.c_m1, f.c0, f.residual, f.fit_error[0], f.fit_error[1], f.fit_error[2]});
    emit(t, cfg.format, std::cout);
    return kOk;
  }
  const std::vector<double> sigmas = parse_grid(a.sigma);
  const std::vector<double> ts = parse_grid(a.t);
  Table t;
  if (a.decompose) {
    if (a.k != 3) throw CLI::ValidationError("mellin", "--decompose needs k = 3");
    const std::int64_t N = matched_cutoff(a.X);
    const DivisorTable d3 = divisor_sieve(3, static_cast<std::uint64_t>(N));
    t.columns = {"s_re", "s_im", "X", "N", "V1_re", "V1_im", "V2_re", "V2_im", "sum_re", "sum_im", "M3_re", "M3_im", "gap"};
    for (double sg : sigmas) {
      for (double tt : ts) {
        const Complex s(sg, tt);
        const Complex v1 = v1_series(s, N, d3);
        const Complex v2 = v2_residual(s, a.X, d3, cfg.tol_contour);
        MellinOptions mo;
        mo.X = a.X;
        mo.tail = TailHandling::boundary_term;
        const Complex m = mellin_by_parts(3, s, cfg.tol_mellin, mo).value;
        const Complex sum = v1 + v2;
        t.rows.push_back({sg, tt, a.X, static_cast<long long>(N), v1.real(), v1.imag(), v2.real(), v2.imag(),
                          sum.real(), sum.imag(), m.real(), m.imag(), std::abs(sum - m)});
      }
    }
    emit(t, cfg.format, std::cout);
    return kOk;
  }
  t.columns = {"k", "s_re", "s_im", "method", "value_re", "value_im", "X", "tail_bound", "quad_err", "model_err"};
  for (double sg : sigmas) {
    for (double tt : ts) {
      const Complex s(sg, tt);
      MellinSample m;
      if (a.method == "direct") {
        m = mellin_direct(a.k, s, a.X, cfg.tol_mellin);
      } else {
        MellinOptions mo;
        mo.X = a.X;
        m = mellin_by_parts(a.k, s, cfg.tol_mellin, mo);
      }
      t.rows.push_back({static_cast<long long>(a.k), sg, tt, a.method, m.value.real(), m.value.imag(), m.X,
                        m.tail_bound, m.quad_err, m.model_err});
    }
  }
  emit(t, cfg.format, std::cout);
  return kOk;
}

// --- divisors --------------------------------------------------------------

struct DivisorArgs {
  int k = 2;
  long long n = 100;
  long long from = 1;
  std::string save;
};

int cmd_divisors(const DivisorArgs& a, const RunConfig& cfg) {
  if (a.n < 1 || a.from < 1 || a.from > a.n) throw CLI::ValidationError("divisors", "need 1 <= from <= n");
  const DivisorTable table = divisor_sieve(a.k, static_cast<std::uint64_t>(a.n));
  if (!a.save.empty()) {
    save_divisor_table(table, a.save);
    return kOk;
  }
  Table t;
  t.columns = {"n", "d_k"};
  for (long long n = a.from; n <= a.n; ++n) {
    t.rows.push_back({n, static_cast<long long>(table[static_cast<std::uint64_t>(n)])});
  }
  emit(t, cfg.format, std::cout);
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string out;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
  if (a.suite != "all") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end()) {
      throw CLI::ValidationError("verify", "unknown suite '" + a.suite + "'");
    }
  }
  ProgressSink progress;
  if (!a.quiet) progress = [](const std::string& m) { std::cerr << m << '\n'; };
  const std::vector<SuiteReport> bundle = run_verify(a.suite, cfg, progress);
  bool ok = true;
  for (const SuiteReport& s : bundle) {
    for (const Report& r : s.reports) {
      std::cerr << (r.passed ? "  pass  " : "  FAIL  ") << s.suite << '/' << r.name << "  gap_abs=" << format_double(r.gap_abs)
                << '\n';
    }
    ok = ok && s.passed();
  }
  const std::string json = bundle_json(bundle);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw DomainError("verify: cannot write " + a.out);
    f << json << '\n';
  } else {
    std::cout << json << '\n';
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zlab: Hardy Z, moments and Mellin transforms"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", g.cache_dir, "directory for checkpoint files");
  app.add_option("--seed", g.seed, "seed for sampled suites")->check(CLI::NonNegativeNumber);

  ZArgs za;
  auto* z = app.add_subcommand("z", "tabulate Z(t)");
  z->add_option("--from", za.from)->required();
  z->add_option("--to", za.to)->required();
  z->add_option("--step", za.step)->required();
  z->add_flag("--oracle", za.oracle, "add an Euler-Maclaurin column");
  z->add_option("--corrections", za.corrections)->check(CLI::Range(0, 4));

  MomentArgs ma;
  auto* mo = app.add_subcommand("moment", "integral of Z^k over [T, 2T] and its cosine sum");
  mo->add_option("--k", ma.k)->required()->check(CLI::Range(1, 8));
  mo->add_option("--T", ma.T)->required();
  mo->add_option("--mode", ma.mode)->check(CLI::IsMember({"direct", "explicit", "both"}));
  mo->add_option("--tol", ma.tol, "absolute tolerance for the direct integral");

  MellinArgs me;
  auto* mel = app.add_subcommand("mellin", "Mellin transforms of Z^k");
  mel->add_option("--k", me.k)->check(CLI::Range(1, 4));
  mel->add_option("--sigma", me.sigma, "a:b:n or a single value");
  mel->add_option("--t", me.t, "a:b:n or a single value");
  mel->add_option("--method", me.method)->check(CLI::IsMember({"direct", "by_parts"}));
  mel->add_option("--X", me.X, "truncation point");
  mel->add_flag("--laurent", me.laurent, "fit the principal part of M_2 at s = 1");
  mel->add_flag("--decompose", me.decompose, "V1 + V2 against M_3");

  DivisorArgs da;
  auto* dv = app.add_subcommand("divisors", "d_k(n) table");
  dv->add_option("--k", da.k)->required()->check(CLI::Range(1, 8));
  dv->add_option("--n", da.n)->required();
  dv->add_option("--from", da.from);
  dv->add_option("--save", da.save, "write the binary table instead of CSV");

  VerifyArgs va;
  auto* ve = app.add_subcommand("verify", "run identity and acceptance checks");
  ve->add_option("suite", va.suite, "suite name or all");
  ve->add_option("--out", va.out, "write the JSON bundle here instead of stdout");
  ve->add_flag("--quiet", va.quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = resolve(g);
    if (*z) return cmd_z(za, cfg);
    if (*mo) return cmd_moment(ma, cfg);
    if (*mel) return cmd_mellin(me, cfg);
    if (*dv) return cmd_divisors(da, cfg);
    if (*ve) return cmd_verify(va, cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const PoleError& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << " (best " << format_double(e.best_re()) << ")\n";
    return kNumeric;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
