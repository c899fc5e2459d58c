#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pqc/model_io.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = PQC_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path outfile = fs::temp_directory_path() / "pqc_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + outfile.string() + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream f(outfile);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST(Cli, BuiltinValidateVerifyRoundTrip) {
  const auto h1 = tmp("cli_h1.json");
  ASSERT_EQ(run("builtin heisenberg --n 1 --out " + h1.string()).exit_code, 0);
  EXPECT_EQ(run("validate " + h1.string()).exit_code, 0);
  EXPECT_EQ(run("reeb " + h1.string()).exit_code, 0);
  EXPECT_EQ(run("verify " + h1.string() + " --suite all").exit_code, 0);
  EXPECT_EQ(run("verify " + h1.string() + " --suite ricci").exit_code, 0);
}

TEST(Cli, FullSuitePassesOnHeisenbergN2) {
  const auto h2 = tmp("cli_h2.json");
  ASSERT_EQ(run("builtin heisenberg --n 2 --out " + h2.string()).exit_code, 0);
  const auto r = run("verify " + h2.string() + " --suite all");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"overall\": \"pass\""), std::string::npos);
}

TEST(Cli, ClassifyPrintsLabel) {
  const auto l0 = tmp("cli_l0.json");
  ASSERT_EQ(run("builtin l0 --c 3 --out " + l0.string()).exit_code, 0);
  const auto r = run("classify " + l0.string() + " --format text");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("FlatHeisenberg"), std::string::npos);
}

TEST(Cli, CorruptedModelFailsWithNamedIdentity) {
  const auto m = pqc::builtin_heisenberg(1);
  auto j = pqc::model_to_json(m);
  j["metric_h"][1][1] = "1";  // flip g(Y1, Y1)
  const auto bad = tmp("cli_bad_param.json");
  std::ofstream(bad) << j.dump(2) << "\n";
  const auto r = run("verify " + bad.string());
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("structure/param-s1"), std::string::npos);
  EXPECT_NE(r.out.find("\"overall\": \"fail\""), std::string::npos);
}

TEST(Cli, MalformedFileIsUsageError) {
  const auto bad = tmp("cli_malformed.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(run("verify " + bad.string()).exit_code, 2);
  EXPECT_EQ(run("verify /nonexistent/file.json").exit_code, 2);
  EXPECT_EQ(run("no-such-subcommand").exit_code, 2);
}

TEST(Cli, JsonReportsAreByteIdentical) {
  const auto h1 = tmp("cli_h1_det.json");
  ASSERT_EQ(run("builtin heisenberg --n 1 --out " + h1.string()).exit_code, 0);
  const auto r1 = run("verify " + h1.string() + " --suite all --format json");
  const auto r2 = run("verify " + h1.string() + " --suite all --format json");
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_FALSE(r1.out.empty());
}

TEST(Cli, TextAndJsonCarrySamePassFailContent) {
  const auto h1 = tmp("cli_h1_fmt.json");
  ASSERT_EQ(run("builtin heisenberg --n 1 --out " + h1.string()).exit_code, 0);
  const auto rj = run("verify " + h1.string() + " --suite ricci --format json");
  const auto rt = run("verify " + h1.string() + " --suite ricci --format text");
  EXPECT_EQ(rj.exit_code, rt.exit_code);
  const auto j = nlohmann::json::parse(rj.out);
  std::size_t json_checks = 0, json_passes = 0;
  for (const auto& s : j["suites"])
    for (const auto& c : s["checks"]) {
      ++json_checks;
      if (c["status"] == "pass") ++json_passes;
    }
  std::size_t text_ok = 0, text_fail = 0;
  std::istringstream is(rt.out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("  ok  ", 0) == 0) ++text_ok;
    if (line.rfind("  FAIL", 0) == 0) ++text_fail;
  }
  EXPECT_EQ(json_checks, text_ok + text_fail);
  EXPECT_EQ(json_passes, text_ok);
}

TEST(Cli, GaugeIsSeedDeterministic) {
  const auto h1 = tmp("cli_h1_g.json");
  ASSERT_EQ(run("builtin heisenberg --n 1 --out " + h1.string()).exit_code, 0);
  const auto g1 = run("gauge " + h1.string() + " --seed 9");
  const auto g2 = run("gauge " + h1.string() + " --seed 9");
  const auto g3 = run("gauge " + h1.string() + " --seed 10");
  EXPECT_EQ(g1.out, g2.out);
  EXPECT_NE(g1.out, g3.out);
  EXPECT_EQ(g1.exit_code, 0);
  // the transformed model verifies
  const auto gf = tmp("cli_h1_gauged.json");
  ASSERT_EQ(run("gauge " + h1.string() + " --seed 9 --rescale 3/2 --out " + gf.string()).exit_code,
            0);
  EXPECT_EQ(run("verify " + gf.string() + " --suite ricci").exit_code, 0);
}

TEST(Cli, FormalSuitePasses) {
  const auto r = run("formal-sasakian");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("\"overall\": \"pass\""), std::string::npos);
}
