#include <gtest/gtest.h>

#include "json.hpp"
#include "zlab/config.hpp"
#include "zlab/errors.hpp"
#include "zlab/report.hpp"
#include "zlab/verify.hpp"

using namespace zlab;
using Json = nlohmann::ordered_json;

TEST(Report, JsonKeysInOrder) {
  Report r;
  r.name = "demo";
  r.lhs = {1.0, 2.0};
  r.rhs = {1.0, 2.5};
  r.set_gap();
  r.passed = true;
  r.cert("bound", 0.75).param("k", 2);
  const Json j = Json::parse(to_json(r));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "lhs", "rhs", "gap_abs", "gap_rel", "passed", "certificates",
                                            "params"}));
  EXPECT_DOUBLE_EQ(j["gap_abs"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(j["lhs"]["im"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(j["certificates"]["bound"].get<double>(), 0.75);
}

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "5.0000000000000000e-01");
  EXPECT_EQ(format_double(-1234.5), "-1.2345000000000000e+03");
}

TEST(Verify, SuiteNamesAndUnknown) {
  EXPECT_EQ(suite_names().size(), 10u);
  EXPECT_EQ(suite_names().front(), "functional_equation");
  EXPECT_THROW(run_suite("nope", RunConfig{}), DomainError);
}

TEST(Verify, DivisorSuiteBundle) {
  const auto bundle = run_verify("divisors", RunConfig{});
  ASSERT_EQ(bundle.size(), 1u);
  EXPECT_TRUE(bundle[0].passed());
  const Json j = Json::parse(bundle_json(bundle));
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["suites"][0]["suite"], "divisors");
}

TEST(Verify, FunctionalEquationSeedDeterminesOutput) {
  RunConfig a;
  RunConfig b;
  b.threads = 3;
  const std::string ja = bundle_json(run_verify("functional_equation", a));
  const std::string jb = bundle_json(run_verify("functional_equation", b));
  EXPECT_EQ(ja, jb);
  RunConfig c;
  c.seed = 1;
  EXPECT_NE(bundle_json(run_verify("functional_equation", c)), ja);
}
