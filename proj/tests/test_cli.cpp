#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kanno/cli.hpp"

using namespace kanno;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(KANNO_DATA_DIR) + "/" + name; }

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

TEST(Cli, ClassifyBuiltins) {
  auto r = run({"classify", "triangle"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has(r.out, "alpha: cyclic\n"));
  EXPECT_TRUE(has(r.out, "conformal: no; chordal: yes\n"));
  EXPECT_TRUE(has(r.out, "gyo stuck at: "));

  r = run({"classify", "hstar"});
  EXPECT_TRUE(has(r.out, "alpha: acyclic\n"));
  EXPECT_TRUE(has(r.out, "beta: acyclic\n"));
  EXPECT_TRUE(has(r.out, "weak gamma-cycle: ({A,B},B,{A,B,C},C,{A,C},A,{A,B})\n")) << r.out;

  r = run({"classify", "bfmy-acyclic"});
  EXPECT_TRUE(has(r.out, "weak beta-cycle: ({A,B,C},C,{C,D,E},E,{E,F,A},A,{A,B,C})\n")) << r.out;

  r = run({"classify", "p4"});
  EXPECT_TRUE(has(r.out, "gamma: acyclic\n"));
}

TEST(Cli, ClassifyJson) {
  const auto r = run({"--format", "json", "classify", "hstar"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["alpha"], "acyclic");
  EXPECT_EQ(j["gamma"], "cyclic");
  EXPECT_EQ(j["weak_gamma_cycle"], "({A,B},B,{A,B,C},C,{A,C},A,{A,B})");
}

TEST(Cli, CheckTriangle) {
  const auto r = run({"check", "triangle", data("triangle.txt"), "--global"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has(r.out, "pairwise consistent: yes\n")) << r.out;
  EXPECT_TRUE(has(r.out, "global: inconsistent\n")) << r.out;
}

TEST(Cli, CheckNumericalSemigroupPair) {
  const auto r = run({"check", data("nsg_pair.txt"), "--global"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has(r.out, "R S: inner consistent: yes; consistent: no\n")) << r.out;
  EXPECT_TRUE(has(r.out, "pairwise consistent: no\n"));
}

TEST(Cli, EvalStandardJoinOnTriangle) {
  const auto r = run({"eval", "triangle", data("triangle.txt"), "--expr", "((X1 * X2) * X3)", "--witness",
                      "standard-join"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(has(r.out, "(empty)\n")) << r.out;
  EXPECT_TRUE(has(r.out, "monotone: no (fails at ((X1 * X2) * X3))\n")) << r.out;
}

TEST(Cli, EvalRejectsBadExpression) {
  const auto r = run({"eval", "triangle", data("triangle.txt"), "--expr", "(X1 * X9)"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, VerifySuites) {
  auto r = run({"verify", "structural", "--caps", "3,3"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;

  r = run({"--trials", "20", "verify", "tp", "--monoid", "nsg(3,5)"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_TRUE(has(r.out, "TP counterexample found")) << r.out;

  r = run({"--trials", "20", "verify", "gamma-monotone", "--schema", "p3", "--monoid", "bag"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;

  r = run({"--trials", "10", "verify", "local-global", "--schema", "triangle", "--monoid", "boolean"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST(Cli, VerifyJsonAndOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "kanno_cli_report.json";
  std::filesystem::remove(path);
  const auto r = run({"--format", "json", "--out", path.string(), "verify", "structural", "--caps", "2,2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  ASSERT_TRUE(f.good());
  const auto j = nlohmann::json::parse(f);
  EXPECT_EQ(j["suite"], "structural");
  std::filesystem::remove(path);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"verify", "frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"classify", "/no/such/file"}).code, kExitInputError);
  EXPECT_EQ(run({"verify", "structural", "--caps", "9,9"}).code, kExitInputError);
  EXPECT_EQ(run({"--format", "yaml", "classify", "p3"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"check", "triangle"}).code, kExitInputError);
}

TEST(Cli, MalformedRelationFileReportsPosition) {
  const auto path = std::filesystem::temp_directory_path() / "kanno_bad_rel.txt";
  {
    std::ofstream f(path);
    f << "monoid bag\nrelation X1\nrow A=0 : 1\n";
  }
  const auto r = run({"check", "triangle", path.string()});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(has(r.err, ":3:")) << r.err;
  std::filesystem::remove(path);
}

}  // namespace
