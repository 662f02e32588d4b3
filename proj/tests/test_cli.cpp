#include "unitfrac/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace unitfrac::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

TEST(Cli, DecomposeFindsCertificate) {
  auto r = invoke({"decompose", "-a", "4", "-n", "841"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "route: formula-two")) << r.out;
  // The scan's first hit; the x = 211 certificate is reachable explicitly.
  EXPECT_TRUE(contains(r.out, "x = 220, y = 6380, z = 18502")) << r.out;
  r = invoke({"decompose", "-a", "4", "-n", "841", "--route", "vieta", "-x", "211", "-t", "185600"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "x = 211, y = 67280, z = 489520")) << r.out;
  r = invoke({"decompose", "-a", "4", "-n", "6"});
  EXPECT_TRUE(contains(r.out, "route: trivial")) << r.out;
}

TEST(Cli, DecomposeRoutesAndMisses) {
  auto r = invoke({"decompose", "-a", "4", "-n", "4", "--route", "formula-one"});
  EXPECT_EQ(r.code, kNotFound);
  r = invoke({"decompose", "-a", "4", "-n", "577", "--route", "formula-two", "--preset", "paper-coverage"});
  EXPECT_EQ(r.code, kNotFound);
  r = invoke({"decompose", "-a", "3", "-n", "7"});
  EXPECT_TRUE(contains(r.out + r.err, "outside the conjecture regime"));
}

TEST(Cli, Verify) {
  auto r = invoke({"verify", "-a", "4", "-n", "17", "-x", "5", "-y", "34", "-z", "170"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "holds")) << r.out;
  r = invoke({"verify", "-a", "4", "-n", "3", "-x", "1", "-y", "1", "-z", "1"});
  EXPECT_EQ(r.code, kNotFound);
  EXPECT_TRUE(contains(r.out, "fails")) << r.out;
}

TEST(Cli, ScanCoverage) {
  auto r = invoke({"scan-coverage", "-a", "4", "--from", "500", "--to", "600"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "recalcitrant: [577]")) << r.out;
  EXPECT_TRUE(contains(r.out, "99.01%")) << r.out;
}

TEST(Cli, ScanMordellAndTables) {
  auto r = invoke({"scan-mordell", "--from", "2", "--to", "2000"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "86.67%")) << r.out;
  r = invoke({"tables", "--table", "T9", "--table", "T1"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "T9 (Table 9, a=8): 22/22 rows matched")) << r.out;
  r = invoke({"tables", "--table", "T42"});
  EXPECT_EQ(r.code, kUsage);
}

TEST(Cli, SquareScan) {
  auto r = invoke({"square-scan", "-a", "4", "-n", "577", "-x", "145", "--t-from", "25000", "--t-to", "40000"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "t = 33466, delta = 4479892624, sqrt = 66932")) << r.out;
  r = invoke({"square-scan", "-a", "4", "-n", "577", "-x", "145", "--t-from", "2", "--t-to", "3"});
  EXPECT_EQ(r.code, kNotFound);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"decompose", "-n", "5", "--bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"decompose", "-n", "1x"}).code, kUsage);
  EXPECT_EQ(invoke({"decompose", "-n", "-5"}).code, kUsage);
  EXPECT_EQ(invoke({"decompose", "-n", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"decompose", "-a", "1", "-n", "5"}).code, kUsage);
  EXPECT_EQ(invoke({"decompose"}).code, kUsage);
  EXPECT_EQ(invoke({"verify", "-n", "5", "-x", "1", "-y", "0", "-z", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"scan-coverage", "--from", "10", "--to", "5"}).code, kUsage);
  EXPECT_EQ(invoke({"scan-coverage", "--from", "2", "--to", "5", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(invoke({"scan-coverage", "--from", "2", "--to", "5", "--preset", "fast"}).code, kUsage);
  EXPECT_EQ(invoke({"scan-coverage", "--from", "2", "--to", "5", "--t-window", "0"}).code, kUsage);
  auto r = invoke({"decompose", "-a", "1", "-n", "5"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Cli, CsvOutputIsByteIdentical) {
  const std::vector<std::string> args = {"scan-coverage", "-a", "4", "--from", "2", "--to", "300", "--format", "csv"};
  auto first = invoke(args);
  ASSERT_EQ(first.code, kOk);
  EXPECT_EQ(first.out.rfind("n,x,y,z,t,L,R,holds\n", 0), 0u);
  for (const char* jobs : {"1", "3", "7"}) {
    auto args_j = args;
    args_j.insert(args_j.end(), {"--jobs", jobs});
    EXPECT_EQ(invoke(args_j).out, first.out) << jobs;
  }
}

TEST(Cli, OutFileAndCheckpoint) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("unitfrac_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path out = dir / "report.json";
  const fs::path ckpt = dir / "scan.ckpt";
  auto r = invoke({"scan-coverage", "--from", "500", "--to", "600", "--format", "json", "--out", out.string(),
                   "--checkpoint", ckpt.string()});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(contains(r.out, "recalcitrant: [577]"));
  std::ifstream in(out);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str().front(), '[');
  EXPECT_TRUE(fs::exists(ckpt));
  auto again = invoke({"scan-coverage", "--from", "500", "--to", "600", "--checkpoint", ckpt.string()});
  EXPECT_EQ(again.out, r.out);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace unitfrac::cli
