#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "twoadic/cli.hpp"

namespace twoadic {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string line; std::getline(s, line);) out.push_back(line);
  return out;
}

TEST(Cli, ApproxHuman) {
  const auto r = invoke({"approx", "--bits", "101010"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("f=-1 q=3"), std::string::npos) << r.out;
}

TEST(Cli, ApproxOracleAgreesWithFastPath) {
  const auto fast = invoke({"approx", "--bits", "0110100111", "--format", "csv"});
  const auto oracle = invoke({"approx", "--bits", "0110100111", "--format", "csv", "--oracle"});
  EXPECT_EQ(fast.code, 0);
  EXPECT_EQ(fast.out, oracle.out);
}

TEST(Cli, ComplexityCsvProfile) {
  const auto r = invoke({"complexity", "--bits", "0100", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0], "n,big_lambda,lambda,f,q");
  EXPECT_EQ(rows[1].substr(0, 4), "1,1,");
  EXPECT_EQ(rows[2].substr(0, 4), "2,2,");
  EXPECT_EQ(rows[4].substr(0, 4), "4,2,");
}

TEST(Cli, InputChannels) {
  const auto inline_run = invoke({"complexity", "--bits", "110100", "--format", "csv"});
  const auto stdin_run = invoke({"complexity", "--stdin", "--format", "csv"}, "11 01\n00\n");

  const std::string path = ::testing::TempDir() + "twoadic_cli_input.txt";
  {
    std::ofstream f(path);
    f << "0b";
  }
  const auto file_run = invoke({"complexity", "--file", path, "--input-format", "hex", "--take", "6",
                                "--format", "csv"});
  std::remove(path.c_str());

  EXPECT_EQ(inline_run.code, 0);
  EXPECT_EQ(inline_run.out, stdin_run.out);
  EXPECT_EQ(inline_run.out, file_run.out);
}

TEST(Cli, ExpandExamples) {
  EXPECT_EQ(lines(invoke({"expand", "--q", "3", "--f", "-1", "--n", "6"}).out).front(), "101010");
  EXPECT_EQ(invoke({"expand", "--q", "4", "--f", "1", "--n", "6"}).code, cli::kUsage);
}

TEST(Cli, FcsrCsv) {
  const auto r = invoke({"fcsr", "--taps", "11", "--init", "10", "--n", "8", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows.front(), "i,s,z");
  EXPECT_EQ(rows.size(), 9U);
}

TEST(Cli, ExpectedCsvTable) {
  const auto r = invoke({"expected", "--from", "4", "--to", "10", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 8U);
  EXPECT_EQ(rows[0], "N,e_rat_num,e_rat_den_pow2,e_2adic,lb_2adic_pass,lb_rat_pass,tq_upper_pass");
  EXPECT_EQ(rows[1].substr(0, 7), "4,51,4,");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].substr(rows[i].size() - 15), ",true,true,true") << rows[i];
  }
}

TEST(Cli, ExpectedIsWorkerIndependent) {
  const auto one = invoke({"expected", "--from", "2", "--to", "14", "--format", "csv", "--workers", "1"});
  const auto four = invoke({"expected", "--from", "2", "--to", "14", "--format", "csv", "--workers", "4"});
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, MontecarloIsByteIdentical) {
  const std::vector<std::string> args = {"montecarlo", "--seed", "3", "--samples", "5",
                                         "--n-max", "128", "--format", "csv"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 1U + 5U * 128U);

  auto threaded = args;
  threaded.insert(threaded.end(), {"--workers", "3"});
  EXPECT_EQ(invoke(threaded).out, a.out);
}

TEST(Cli, JsonCarriesMetadata) {
  const auto r = invoke({"montecarlo", "--seed", "9", "--samples", "2", "--n-max", "64", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("metadata").at("seed"), 9);
  EXPECT_EQ(j.at("metadata").at("version"), cli::kVersion);
  EXPECT_TRUE(j.at("metadata").contains("generator"));
}

TEST(Cli, CountModes) {
  EXPECT_EQ(invoke({"count", "--n", "9", "--w", "5", "--format", "csv"}).code, 0);
  EXPECT_EQ(invoke({"count", "--totient-sum", "10", "--format", "json"}).code, 0);
  EXPECT_EQ(invoke({"count", "--n", "9", "--w", "17"}).code, cli::kUsage);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"--version"}).code, cli::kOk);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
  EXPECT_EQ(invoke({"complexity", "--help"}).code, cli::kOk);
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"complexity", "--nope"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"complexity"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"complexity", "--bits", "1", "--stdin"}, "1").code, cli::kUsage);

  const auto bad = invoke({"complexity", "--bits", "10a"});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("position 2"), std::string::npos) << bad.err;

  const auto refused = invoke({"expected", "--n", "30"});
  EXPECT_EQ(refused.code, cli::kRefused);
  EXPECT_NE(refused.err.find("montecarlo"), std::string::npos) << refused.err;
  EXPECT_TRUE(refused.out.empty());

  EXPECT_EQ(invoke({"approx", "--bits", std::string(20, '1'), "--oracle"}).code, cli::kRefused);
}

TEST(Cli, SelftestPasses) {
  const auto r = invoke({"selftest", "--max-n", "8", "--random", "20"});
  EXPECT_EQ(r.code, cli::kOk) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace twoadic
