#include "fixtures.hpp"

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <filesystem>
#include <sstream>

namespace mincode {
namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mincode");
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

const std::string butterfly = fixtures::data_path("butterfly.json");

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mincode_test_" + name)).string();
}

TEST(Cli, Capacity) {
  const auto r = cli({"capacity", butterfly});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"capacity\": \"2\""), std::string::npos);
  EXPECT_NE(r.out.find("\"t2\": \"2\""), std::string::npos);
}

TEST(Cli, SolveMinCodingOps) {
  const auto r = cli({"solve", "--objective", "min-coding-ops", "--rate", "2", butterfly});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("\"objective_value\": \"1\""), std::string::npos);
}

TEST(Cli, SolveRoutingOnlyMaxRate) {
  const auto r = cli({"solve", "--objective", "max-rate", "--routing-only", "ALL", butterfly});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("\"h\": \"3/2\""), std::string::npos);
  EXPECT_NE(r.out.find("\"time_instances\": \"2\""), std::string::npos);
}

TEST(Cli, SolveAboveCapacityIsInfeasible) {
  const auto r = cli({"solve", "--rate", "3", butterfly});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("infeasible"), std::string::npos);
}

TEST(Cli, RateMaxConflictsWithOtherObjectives) {
  EXPECT_EQ(cli({"solve", "--rate", "max", "--objective", "min-resource", butterfly}).status, 2);
  EXPECT_EQ(cli({"solve", "--rate", "max", butterfly}).status, 0);
  EXPECT_EQ(cli({"solve", "--rate", "2", "--objective", "max-rate", butterfly}).status, 2);
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"solve"}).status, 2);
  EXPECT_EQ(cli({"solve", "--objective", "fastest", butterfly}).status, 2);
  EXPECT_EQ(cli({"solve", "--rate", "1/0", butterfly}).status, 2);
  EXPECT_EQ(cli({"check", "/nonexistent/network.json"}).status, 2);
  EXPECT_EQ(cli({"solve", "--routing-only", "nowhere", butterfly}).status, 2);
  EXPECT_EQ(cli({"construct", "--field-degree", "40", butterfly}).status, 2);

  const auto bad = temp_path("bad.json");
  {
    std::ofstream(bad) << "{\"nodes\": [";
  }
  const auto r = cli({"check", bad});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos);
  std::filesystem::remove(bad);
}

TEST(Cli, SolveThenVerifyRoundTrip) {
  const auto path = temp_path("solution.json");
  for (const char* objective : {"min-coding-ops", "min-packets-coded", "min-resource"}) {
    ASSERT_EQ(cli({"solve", "--objective", objective, butterfly, "-o", path}).status, 0) << objective;
    const auto r = cli({"verify", butterfly, "--solution", path});
    EXPECT_EQ(r.status, 0) << objective << ": " << r.err;
    EXPECT_NE(r.out.find("\"valid\""), std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST(Cli, VerifyRejectsTamperedSolution) {
  const auto path = temp_path("tampered.json");
  ASSERT_EQ(cli({"solve", butterfly, "-o", path}).status, 0);
  auto text = fixtures::read_text(path);
  const auto at = text.find("\"h\": \"2\"");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 8, "\"h\": \"1\"");
  {
    std::ofstream(path) << text;
  }
  const auto r = cli({"verify", butterfly, "--solution", path});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("at s"), std::string::npos);
  // construct refuses it too.
  EXPECT_EQ(cli({"construct", butterfly, "--solution", path}).status, 1);
  std::filesystem::remove(path);
}

TEST(Cli, ConstructProducesValidCode) {
  const auto r = cli({"construct", butterfly, "--seed", "7"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("\"valid\": true"), std::string::npos);
  EXPECT_EQ(cli({"construct", butterfly, "--seed", "7"}).out, r.out);
  const auto fractional = cli({"construct", butterfly, "--rate", "max", "--routing-only", "ALL"});
  EXPECT_EQ(fractional.status, 0) << fractional.err;
  EXPECT_NE(fractional.out.find("\"time_instances\": \"2\""), std::string::npos);
}

TEST(Cli, ExportDot) {
  const auto plain = cli({"export-dot", butterfly});
  EXPECT_EQ(plain.status, 0);
  EXPECT_EQ(plain.out.rfind("digraph network", 0), 0u);
  const auto gadgets = cli({"export-dot", "--gadgets", butterfly});
  EXPECT_EQ(gadgets.status, 0);
  EXPECT_EQ(gadgets.out.rfind("digraph gadgets", 0), 0u);
}

TEST(Cli, CheckReportsShape) {
  const auto r = cli({"check", butterfly});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"collections\": 1"), std::string::npos);
}

TEST(Cli, LpDumpIsWritten) {
  const auto path = temp_path("program.lp");
  ASSERT_EQ(cli({"solve", butterfly, "--lp-dump", path}).status, 0);
  const auto text = fixtures::read_text(path);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("bal(v3){1,2}"), std::string::npos);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace mincode
