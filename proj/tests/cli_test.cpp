// Runs the groupdist binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "groupdist/group.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(GROUPDIST_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("groupdist_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenThenValidate) {
  ASSERT_EQ(run("gen Q8 -o " + path("q8.txt")).code, 0);
  const Result v = run("validate " + path("q8.txt"));
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("ok"), std::string::npos);
}

TEST_F(CliTest, ValidateReportsWitness) {
  {
    std::ofstream f(path("bad.txt"));
    f << "n 4\n0 1 2 3\n1 2 0 3\n2 3 0 1\n3 0 1 2\n";
  }
  const Result v = run("validate " + path("bad.txt"));
  EXPECT_EQ(v.code, 2);
  EXPECT_NE(v.out.find("invalid"), std::string::npos);
  EXPECT_NE(v.out.find("witness"), std::string::npos);
}

TEST_F(CliTest, GenOrderTwentySevenParses) {
  const Result g = run("gen C27");
  ASSERT_EQ(g.code, 0);
  const groupdist::GroupTable t = groupdist::parse_table(g.out);
  EXPECT_EQ(t.order(), 27);
  EXPECT_EQ(t.name(), "C27");
}

TEST_F(CliTest, DistanceReports) {
  const Result same = run("distance C4 C4");
  ASSERT_EQ(same.code, 0);
  EXPECT_EQ(Json::parse(same.out)["value"], 0);

  const Result d = run("distance C9 C3xC3");
  ASSERT_EQ(d.code, 0);
  const Json j = Json::parse(d.out);
  EXPECT_EQ(j["value"], 18);
  EXPECT_EQ(j["exact"], true);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["bound_num"], 162);
  EXPECT_EQ(j["bound_den"], 9);
  EXPECT_FALSE(j.contains("seconds"));
}

TEST_F(CliTest, DistanceAcceptsFiles) {
  ASSERT_EQ(run("gen D3 -o " + path("d3.txt")).code, 0);
  const Result d = run("distance C6 " + path("d3.txt"));
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(Json::parse(d.out)["value"], 12);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("distance C4 C5").code, 3);
  EXPECT_EQ(run("overlap C4 C3").code, 3);
  EXPECT_EQ(run("distance C4 Zz9").code, 2);
  EXPECT_EQ(run("scan --max-order 16").code, 2);
  EXPECT_EQ(run("validate " + path("missing.txt")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(CliTest, Overlap) {
  const Result o = run("overlap C3 C4");
  ASSERT_EQ(o.code, 0);
  const Json j = Json::parse(o.out);
  EXPECT_EQ(j["value"], 7);
  EXPECT_EQ(j["embeddable"], false);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["overlap_witness"]["agreement_count"], 7);
}

TEST_F(CliTest, SmallScan) {
  const Result s = run("scan --max-order 4");
  ASSERT_EQ(s.code, 0);
  const Json j = Json::parse(s.out);
  EXPECT_EQ(j["summary"]["pairs_checked"], 4);
  EXPECT_EQ(j["summary"]["failures"], 0);
  for (const auto& r : j["records"]) EXPECT_EQ(r["pass"], true);
}

TEST_F(CliTest, ScanIsDeterministic) {
  const Result a = run("scan --max-order 8 --seed 3");
  const Result b = run("scan --max-order 8 --seed 3");
  const Result c = run("scan --max-order 8 --seed 3 --jobs 2");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST_F(CliTest, ScanCsvHasHeader) {
  ASSERT_EQ(run("scan --max-order 4 --format csv -o " + path("scan.csv")).code, 0);
  const std::string csv = slurp(path("scan.csv"));
  EXPECT_EQ(csv.rfind("kind,pair,", 0), 0u) << csv;
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(CliTest, CorrectWithoutNoisePasses) {
  const Result r = run("correct C6 C12 --points 0 --trials 3");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["base"], "embedding");
  EXPECT_EQ(j["summary"]["passed"], 3);
  EXPECT_EQ(j["summary"]["failed"], 0);
}

TEST_F(CliTest, CorrectWithOnePoint) {
  const Result r = run("correct C13 C13 --points 1 --trials 5 --seed 11");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["summary"]["applicable"], 5);
  EXPECT_EQ(j["summary"]["passed"], 5);
}

}  // namespace
