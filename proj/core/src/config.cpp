#include "zlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zlab/errors.hpp"
#include "zlab/report.hpp"

namespace zlab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw DomainError("config: bad number for " + key + ": '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw DomainError("config: bad integer for " + key + ": '" + v + "'");
  return x;
}

double positive(const std::string& key, double x) {
  if (!(x > 0.0)) throw DomainError("config: " + key + " must be positive");
  return x;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "tol_z") {
    cfg.tol_z = positive(key, to_double(key, v));
  } else if (key == "tol_moment") {
    cfg.tol_moment = positive(key, to_double(key, v));
  } else if (key == "tol_mellin") {
    cfg.tol_mellin = positive(key, to_double(key, v));
  } else if (key == "tol_contour") {
    cfg.tol_contour = positive(key, to_double(key, v));
  } else if (key == "max_evals") {
    cfg.max_evals = to_integer(key, v);
    if (cfg.max_evals < 1000) throw DomainError("config: max_evals must be >= 1000");
  } else if (key == "threads") {
    const long long n = to_integer(key, v);
    if (n < 1 || n > 256) throw DomainError("config: threads must lie in [1, 256]");
    cfg.threads = static_cast<int>(n);
  } else if (key == "cache_dir") {
    cfg.cache_dir = v;
  } else if (key == "format") {
    if (v != "csv" && v != "json") throw DomainError("config: format must be csv or json");
    cfg.format = v;
  } else if (key == "seed") {
    const long long n = to_integer(key, v);
    if (n < 0) throw DomainError("config: seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(n);
  } else {
    throw DomainError("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::vector<std::string> config_keys() {
  return {"tol_z", "tol_moment", "tol_mellin", "tol_contour", "max_evals",
          "threads", "cache_dir", "format", "seed"};
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config: line " + std::to_string(lineno) + " has no '='");
    }
    set_key(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

void apply_environment(RunConfig& cfg) {
  if (const char* dir = std::getenv("ZLAB_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    cfg.cache_dir = dir;
  }
  if (const char* n = std::getenv("ZLAB_THREADS"); n != nullptr && *n != '\0') {
    set_key(cfg, "threads", n);
  }
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "tol_z = " << format_double(cfg.tol_z) << '\n'
      << "tol_moment = " << format_double(cfg.tol_moment) << '\n'
      << "tol_mellin = " << format_double(cfg.tol_mellin) << '\n'
      << "tol_contour = " << format_double(cfg.tol_contour) << '\n'
      << "max_evals = " << cfg.max_evals << '\n'
      << "threads = " << cfg.threads << '\n'
      << "cache_dir = " << cfg.cache_dir << '\n'
      << "format = " << cfg.format << '\n'
      << "seed = " << cfg.seed << '\n';
  return out.str();
}

}  // namespace zlab
