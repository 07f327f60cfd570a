#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "certquad/cli.hpp"

using namespace certquad::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "certquad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto o = invoke(std::move(args));
  EXPECT_EQ(o.code, exit_success) << o.err;
  return json::parse(o.out);
}

RunConfig config(std::string command) {
  RunConfig c;
  c.command = std::move(command);
  return c;
}

}  // namespace

TEST(Cli, IntegrateWorkedExample) {
  const auto j = invoke_json({"integrate", "--function", "poly22", "--rect", "0", "1", "0", "1",
                              "--rule", "trapezoid", "--p", "inf"});
  EXPECT_EQ(j["command"], "integrate");
  EXPECT_DOUBLE_EQ(j["estimate"].get<double>(), 0.25);
  EXPECT_NEAR(j["oracle"]["value"].get<double>(), 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(j["bound"]["total"].get<double>(), 0.75, 1e-12);
  EXPECT_TRUE(j["pass"].get<bool>());
  for (const char* key : {"command", "inputs", "estimate", "oracle", "bound", "provenance", "pass"})
    EXPECT_TRUE(j.contains(key)) << key;
  for (const char* key : {"total", "fx_term", "fy_term", "fxy_term"}) EXPECT_TRUE(j["bound"].contains(key));
  for (const char* key : {"value", "err"}) EXPECT_TRUE(j["oracle"].contains(key));
}

TEST(Cli, BoundOmitsOracle) {
  const auto j = invoke_json({"bound", "--function", "poly22", "--rule", "midpoint"});
  EXPECT_TRUE(j["oracle"].is_null());
  EXPECT_NEAR(j["bound"]["total"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, VerifyIdentity) {
  const auto j = invoke_json({"verify-identity", "--function", "expsum", "--weight", "midpoint"});
  EXPECT_LT(j["details"]["residual"].get<double>(), 1e-8);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, MinimizeNorm) {
  const auto j = invoke_json({"minimize-norm", "--q", "2", "--restarts", "2"});
  EXPECT_NEAR(j["details"]["achieved_norm"].get<double>(), 2.0 / 3.0, 1e-6);
  EXPECT_LE(j["details"]["max_abs_coefficient"].get<double>(), 1e-4);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, ConvergeRows) {
  const auto j = invoke_json({"converge", "--function", "sinsin", "--rect", "0", "3.141592653589793", "0",
                              "3.141592653589793", "--rule", "composite-trapezoid", "--levels", "3"});
  const auto& rows = j["details"]["rows"];
  ASSERT_EQ(rows.size(), 4u);
  int expected_n = 1;
  for (const auto& row : rows) {
    EXPECT_EQ(row["n"].get<int>(), expected_n);
    expected_n *= 2;
    for (const char* key : {"estimate", "error", "bound", "bound_over_error"}) EXPECT_TRUE(row.contains(key));
    EXPECT_LE(row["error"].get<double>(), row["bound"].get<double>());
  }
  EXPECT_LT(j["details"]["bound_slope"].get<double>(), 0.0);
}

TEST(Cli, CorpusReport) {
  const auto j = invoke_json({"corpus-report", "--resolution", "32"});
  EXPECT_EQ(j["details"]["cases"].get<int>(), 640);
  EXPECT_TRUE(j["details"]["violations"].empty());
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, TextOutput) {
  const auto o = invoke({"integrate"});
  EXPECT_EQ(o.code, exit_success);
  EXPECT_NE(o.out.find("estimate"), std::string::npos);
  EXPECT_NE(o.out.find("0.75"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"integrate", "--p", "nope"}).code, exit_usage);
  EXPECT_EQ(invoke({"integrate", "--p", "0.5"}).code, exit_usage);
  EXPECT_EQ(invoke({"integrate", "--rect", "1", "0", "0", "1"}).code, exit_usage);
  EXPECT_EQ(invoke({"integrate", "--rule", "simpson"}).code, exit_usage);
  EXPECT_EQ(invoke({"frobnicate"}).code, exit_usage);
  EXPECT_EQ(invoke({}).code, exit_usage);
  const auto unknown = invoke({"integrate", "--function", "nope"});
  EXPECT_EQ(unknown.code, exit_usage);
  EXPECT_NE(unknown.err.find("poly22"), std::string::npos);
}

TEST(Cli, HelpSucceeds) {
  EXPECT_EQ(invoke({"--help"}).code, exit_success);
  EXPECT_EQ(invoke({"integrate", "--help"}).code, exit_success);
}

TEST(Cli, InfinityAlias) {
  const auto a = invoke_json({"bound", "--p", "infinity"});
  const auto b = invoke_json({"bound", "--p", "inf"});
  EXPECT_EQ(a["bound"], b["bound"]);
}

TEST(Cli, JsonRoundTripsForEveryCommand) {
  std::vector<RunConfig> configs;
  auto integrate = config("integrate");
  integrate.rule = "composite-midpoint";
  integrate.m = integrate.n = 3;
  integrate.p = "1.5";
  integrate.resolution = 64;
  configs.push_back(integrate);
  auto bound = config("bound");
  bound.p = "1";
  bound.resolution = 64;
  configs.push_back(bound);
  auto converge = config("converge");
  converge.function = "expsum";
  converge.rule = "composite-trapezoid";
  converge.levels = 2;
  converge.resolution = 64;
  configs.push_back(converge);
  auto identity = config("verify-identity");
  identity.weight = "composite-trapezoid";
  identity.m = identity.n = 2;
  identity.resolution = 64;
  configs.push_back(identity);
  auto minimize = config("minimize-norm");
  minimize.q = "3";
  minimize.restarts = 2;
  configs.push_back(minimize);
  auto corpus = config("corpus-report");
  corpus.resolution = 16;
  configs.push_back(corpus);

  for (const auto& c : configs) {
    const Report r = execute(c);
    const json emitted = to_json(r);
    EXPECT_EQ(report_from_json(emitted), r) << c.command;
    EXPECT_EQ(report_from_json(json::parse(emitted.dump())), r) << c.command;
  }
}
