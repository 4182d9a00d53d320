#include "zlab/report.hpp"

#include <cstdio>

#include "json.hpp"
#include "zlab/verify.hpp"

namespace zlab {
namespace {

using Json = nlohmann::ordered_json;

Json complex_json(Complex z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

Json report_json(const Report& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  j["gap_abs"] = r.gap_abs;
  j["gap_rel"] = r.gap_rel;
  j["passed"] = r.passed;
  Json certs = Json::object();
  for (const auto& [k, v] : r.certificates) certs[k] = v;
  j["certificates"] = certs;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  if (!r.notes.empty()) {
    Json notes = Json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    j["notes"] = notes;
  }
  return j;
}

}  // namespace

std::string to_json(const Report& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(const std::vector<Report>& bundle, int indent) {
  Json arr = Json::array();
  for (const auto& r : bundle) arr.push_back(report_json(r));
  return arr.dump(indent);
}

std::string bundle_json(const std::vector<SuiteReport>& bundle, int indent) {
  Json suites = Json::array();
  bool all = !bundle.empty();
  for (const SuiteReport& s : bundle) {
    Json j;
    j["suite"] = s.suite;
    j["passed"] = s.passed();
    Json reports = Json::array();
    for (const Report& r : s.reports) reports.push_back(report_json(r));
    j["reports"] = reports;
    suites.push_back(j);
    all = all && s.passed();
  }
  Json out;
  out["passed"] = all;
  out["suites"] = suites;
  return out.dump(indent);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace zlab
