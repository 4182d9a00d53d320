#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zlab {

// Settings shared by every CLI command and verification suite. A run with
// the same config produces byte-identical output whatever the thread count.
struct RunConfig {
  double tol_z = 1e-10;          // oracle zeta tolerance
  double tol_moment = 1e-8;      // absolute, for direct moment integrals
  double tol_mellin = 1e-6;      // node-sum estimate accepted by Mellin transforms
  double tol_contour = 1e-9;     // contour quadratures in the identity checks
  long long max_evals = 100'000'000;
  int threads = 1;
  std::string cache_dir = ".zlab-cache";
  std::string format = "csv";    // csv | json
  std::uint64_t seed = 20240101;
};

// Reads "key = value" lines. Blank lines and lines starting with '#' are
// skipped. Unknown keys and malformed values throw DomainError.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Applies ZLAB_CACHE_DIR and ZLAB_THREADS when set.
void apply_environment(RunConfig& cfg);

// key = value lines for every field, in declaration order.
std::string dump_config(const RunConfig& cfg);

std::vector<std::string> config_keys();

}  // namespace zlab
