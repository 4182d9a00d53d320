#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zlab/config.hpp"
#include "zlab/report.hpp"

namespace zlab {

struct SuiteReport {
  std::string suite;
  std::vector<Report> reports;

  bool passed() const {
    for (const Report& r : reports) {
      if (!r.passed) return false;
    }
    return !reports.empty();
  }
};

// Suite names in the order `verify all` runs them:
// functional_equation, z_cross, explicit_k2, explicit_k13, cubic, primitive,
// laurent, identities, decomposition, divisors.
const std::vector<std::string>& suite_names();

// Progress lines (suite start/finish and wall time) go to the optional sink;
// they never enter the reports, which depend only on the config.
using ProgressSink = std::function<void(const std::string&)>;

// Throws DomainError for an unknown suite name.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg, const ProgressSink& progress = {});
// "all" runs every suite; otherwise a single suite.
std::vector<SuiteReport> run_verify(const std::string& name, const RunConfig& cfg,
                                    const ProgressSink& progress = {});

// {"passed": ..., "suites": [{"suite", "passed", "reports": [...]}, ...]}
std::string bundle_json(const std::vector<SuiteReport>& bundle, int indent = 2);

}  // namespace zlab
