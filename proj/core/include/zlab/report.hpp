#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "zlab/special.hpp"

namespace zlab {

// Outcome of one identity check. Serializes to
// {name, lhs, rhs, gap_abs, gap_rel, passed, certificates, params}
// with keys in insertion order.
struct Report {
  std::string name;
  Complex lhs;
  Complex rhs;
  double gap_abs = 0.0;
  double gap_rel = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, double>> certificates;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, std::string>> notes;

  void set_gap() {
    gap_abs = std::abs(lhs - rhs);
    gap_rel = gap_abs / std::max(std::abs(lhs), 1e-300);
  }
  Report& cert(const std::string& key, double v) {
    certificates.emplace_back(key, v);
    return *this;
  }
  Report& param(const std::string& key, double v) {
    params.emplace_back(key, v);
    return *this;
  }
  Report& note(const std::string& key, const std::string& v) {
    notes.emplace_back(key, v);
    return *this;
  }
};

std::string to_json(const Report& r, int indent = 2);
std::string to_json(const std::vector<Report>& bundle, int indent = 2);

// %.16e formatting used for every CSV and text value.
std::string format_double(double v);

}  // namespace zlab
