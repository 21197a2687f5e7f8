#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "paperfold/cli.hpp"

namespace {

using paperfold::cli::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = paperfold::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(PAPERFOLD_GOLDEN_DIR) + "/" + name);
  EXPECT_TRUE(in) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, SeqMatchesGolden) {
  const auto r = run({"seq", "--kind", "s", "--count", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("seq_s6.txt"));
}

TEST(Cli, MatrixL8MatchesGolden) {
  const auto r = run({"matrix", "--kind", "L", "--size", "8", "--format", "plain"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("matrix_L8.txt"));
}

TEST(Cli, VerifyThm2JsonMatchesGolden) {
  const auto r = run({"verify", "--suite", "thm2", "--size", "256", "--format", "json", "--no-timing"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("verify_thm2.json"));
}

TEST(Cli, GlobalFormatBeforeOrAfterSubcommand) {
  const auto a = run({"--format", "json", "seq", "--kind", "mu", "--count", "8"});
  const auto b = run({"seq", "--kind", "mu", "--count", "8", "--format", "json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = json::parse(a.out);
  EXPECT_EQ(j["values"], json({1, 1, 0, 1, 0, 0, 0, 1}));
}

TEST(Cli, CsvMatrixIsFullSquare) {
  const auto r = run({"matrix", "--kind", "LZ", "--size", "3", "--format", "csv"});
  EXPECT_EQ(r.out, "1,0,0\n1,1,0\n2,3,1\n");
}

TEST(Cli, WordLevelAndIndex) {
  EXPECT_EQ(run({"word", "--level", "2"}).out, "-x1 x1 x2 -x2 x1 -x1\n");
  EXPECT_EQ(run({"word", "--index", "3"}).out, "x2\n");
  EXPECT_EQ(run({"word", "--level", "2", "--index", "3"}).code, 2);
  EXPECT_EQ(run({"word"}).code, 2);
}

TEST(Cli, CfExampleOne) {
  const auto r = run({"cf", "--example", "1", "--order", "10", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["coeffs"].size(), 10u);
  for (int k = 0; k < 10; ++k) {
    const bool pow2 = k > 0 && (k & (k - 1)) == 0;
    EXPECT_EQ(j["coeffs"][k], pow2 ? "1/1" : "0/1") << k;
  }
}

TEST(Cli, UsageErrorsExitTwoWithSynopsis) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"seq", "--kind", "q", "--count", "4"},
           {"seq", "--count", "4"},
           {"matrix", "--kind", "L", "--size", "x"},
           {"--format", "xml", "seq", "--kind", "s", "--count", "3"},
           {"unique", "--check", "1,a"},
           {"verify", "--suite", "nope"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << args.size();
    EXPECT_NE(r.err.find("Usage:"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, GuardsExitThree) {
  EXPECT_EQ(run({"matrix", "--kind", "L", "--size", "0"}).code, 3);
  EXPECT_EQ(run({"hankel", "--source", "mu", "--size", "65"}).code, 3);
  EXPECT_EQ(run({"verify", "--suite", "thm2", "--size", "5000"}).code, 3);
  EXPECT_EQ(run({"unique", "--check", "1,2,1"}).code, 3);
}

TEST(Cli, UniqueCheckExitCodes) {
  EXPECT_EQ(run({"unique", "--check", "1,1,0,1,0,0,0,1"}).code, 0);
  const auto r = run({"unique", "--check", "1,1,1", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["pass"], false);
}

TEST(Cli, VerifyAllDegenerateAndSeeded) {
  EXPECT_EQ(run({"verify", "--suite", "all", "--size", "1"}).code, 0);
  EXPECT_EQ(run({"verify", "--suite", "all", "--size", "16", "--seed", "7", "--strict"}).code, 0);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"verify", "--suite", "all",      "--size",      "32",
                                         "--seed", "7",       "--format", "json",        "--no-timing"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"verify", "--suite", "eps", "--seed", "3"}).out.substr(0, 20),
            run({"verify", "--suite", "eps", "--seed", "3"}).out.substr(0, 20));
}

TEST(Cli, RunReportRoundTrips) {
  const auto r = run({"verify", "--suite", "all", "--size", "16", "--format", "json"});
  const auto j = json::parse(r.out);
  for (const char* key : {"suite", "size", "order", "seed", "pass", "failures", "elapsed_ms", "suites"})
    EXPECT_TRUE(j.contains(key)) << key;
  const auto report = j.get<paperfold::cli::RunReport>();
  EXPECT_EQ(json(report), j);
  EXPECT_EQ(report.pass, report.failures.empty());
  EXPECT_EQ(report.suites.size(), paperfold::cli::suites().size());
}

TEST(Cli, LogConjectureSuitePassesStrict) {
  paperfold::cli::RunReport r;
  paperfold::cli::VerifyOptions opt;
  opt.suite = "log-conjecture";
  opt.size = 24;
  r = paperfold::cli::verify(opt);
  EXPECT_TRUE(r.pass);
  opt.strict = true;
  EXPECT_TRUE(paperfold::cli::verify(opt).pass);
}

TEST(Cli, HankelPlainShowsFactors) {
  const auto r = run({"hankel", "--source", "mu", "--size", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("D\n1 -1 1 -1\n"), std::string::npos);
}

TEST(Cli, DetsAndJacobi) {
  EXPECT_EQ(run({"dets", "--max", "3", "--format", "csv"}).out, "1,1\n2,-1\n3,-1\n");
  const auto j = json::parse(run({"jacobi", "--depth", "3", "--format", "json"}).out);
  EXPECT_EQ(j["b"], json({"-1/1", "-1/1"}));
}

}  // namespace
