#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sint/cli.hpp"
#include "sint/report.hpp"

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sint::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Invocation& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, CheckPk1) {
  const Invocation r = run({"check", "pk1", "--f", "x/2", "--domain", "0", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["command"], "check");
  EXPECT_NEAR(j["result"]["lhs"].get<double>(), 5 / (1 + 2 * std::numbers::e), 1e-6);
  EXPECT_NEAR(j["result"]["rhs"].get<double>(), 5.0 / 3.0, 1e-6);
  EXPECT_TRUE(j["result"]["holds"].get<bool>());
  for (const char* key : {"version", "command", "config", "result", "notes"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["config"]["check"]["sugeno"]["level"]["scan_points"], 4096);
}

TEST(Cli, ConstantRule) {
  const Invocation r = run({"integrate", "sugeno", "--f", "7", "--domain", "0", "3", "--measure", "uniform"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json_of(r)["result"]["value"].get<double>(), 3.0, 1e-8);
}

TEST(Cli, RiemannAndCsv) {
  const Invocation r = run({"integrate", "riemann", "--f", "ln(x)", "--domain", "0", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "value,abs_error_estimate,evaluations");
}

TEST(Cli, PaperExamples) {
  const Invocation r = run({"paper-examples"});
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  ASSERT_EQ(j["result"].size(), 2u);
  EXPECT_EQ(j["notes"].size(), 2u);
}

TEST(Cli, ViolationExitsOne) {
  const Invocation r = run({"check", "hk", "--f", "0.01*x", "--phi", "x^2", "--domain", "0.1", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json_of(r)["result"]["holds"].get<bool>());
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "pk9", "--f", "x", "--domain", "0", "1"}).code, 2);
  EXPECT_EQ(run({"check", "pk1", "--f", "x"}).code, 2);
  EXPECT_EQ(run({"check", "pk1", "--f", "ln(x", "--domain", "0", "1"}).code, 2);
  EXPECT_EQ(run({"check", "pk1", "--f", "x", "--domain", "3", "1"}).code, 2);
  EXPECT_EQ(run({"check", "hk", "--f", "x", "--domain", "1", "2"}).code, 2);
  EXPECT_EQ(run({"integrate", "sugeno", "--f", "x", "--domain", "0", "1", "--tol", "0"}).code, 2);
  EXPECT_EQ(run({"integrate", "sugeno", "--f", "x", "--domain", "0", "1", "--measure", "fuzzy"}).code, 2);
  const Invocation usage = run({"sweep", "pk1"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_NE(usage.err.find("usage:"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsThree) {
  EXPECT_EQ(run({"integrate", "riemann", "--f", "1/x", "--domain", "0", "1"}).code, 3);
  EXPECT_EQ(run({"integrate", "sugeno", "--f", "ln(x-1)", "--domain", "0", "2"}).code, 3);
}

TEST(Cli, HelpShowsDefaults) {
  const Invocation r = run({"integrate", "sugeno", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("4096"), std::string::npos);
  EXPECT_NE(r.out.find("1e-08"), std::string::npos);
}

TEST(Cli, EmitPlotCsv) {
  const auto path = std::filesystem::temp_directory_path() / "sint_plot_test.csv";
  const Invocation r = run({"emit-plot", "--f", "x/2", "--domain", "0", "5", "--measure", "uniform", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "alpha,F_alpha,min_alpha_F");
  double prev = -1;
  int rows = 0;
  while (std::getline(in, line)) {
    const double alpha = std::stod(line.substr(0, line.find(',')));
    ASSERT_GT(alpha, prev);
    prev = alpha;
    ++rows;
  }
  EXPECT_EQ(rows, 512);
  std::filesystem::remove(path);
}

TEST(Cli, SweepIsReproducibleAndReplayable) {
  const std::vector<std::string> args = {"sweep", "pk1", "--family", "power_increasing", "--trials", "6",
                                         "--seed", "99", "--jobs", "2"};
  const Invocation a = run(args);
  const Invocation b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const auto j = json_of(a);
  const auto& worst = j["result"]["worst_case"];
  ASSERT_TRUE(worst.is_object());
  const Invocation replay = run({"check", "pk1", "--f", worst["f"].get<std::string>(), "--domain",
                          std::to_string(worst["domain"][0].get<double>()),
                          std::to_string(worst["domain"][1].get<double>())});
  ASSERT_EQ(replay.code, 0);
  EXPECT_EQ(json_of(replay)["result"]["slack"].get<double>(), j["result"]["min_slack"].get<double>());
}

TEST(Report, NonFiniteNumbersAreStrings) {
  EXPECT_EQ(sint::report::number(INFINITY).dump(), "\"inf\"");
  EXPECT_EQ(sint::report::number(-INFINITY).dump(), "\"-inf\"");
  EXPECT_EQ(sint::report::number(NAN).dump(), "\"nan\"");
  EXPECT_EQ(sint::report::number(0.1).dump(), "0.1");
  EXPECT_EQ(sint::report::number(1.0 / 3.0).get<double>(), 1.0 / 3.0);
}
