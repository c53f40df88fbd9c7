#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

#include "psdec/cli.hpp"

using namespace psdec;
using namespace psdec::cli;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(PSDEC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(Cli, ConeRows) {
  EXPECT_EQ(cmd_cone(1, false).document["entries"].size(), 4u);
  EXPECT_EQ(cmd_cone(0, false).document["entries"].size(), 1u);
  EXPECT_EQ(cmd_cone(2, true).document["entries"].size(), 7u);
  EXPECT_THROW(cmd_cone(-1, false), UsageError);
}

TEST(Cli, Decompose) {
  const auto a = cmd_decompose({2, 3, 4}, 3, false).document["entries"][0];
  EXPECT_EQ(a["dim"], 8424);
  EXPECT_EQ(a["mu"], 1);
  const auto b = cmd_decompose({2, 3, 4}, 2, false).document["entries"][0];
  EXPECT_EQ(b["count"], 0);
  EXPECT_EQ(b["note"], "V_c = 0");
  EXPECT_EQ(cmd_decompose({1, 0, 1}, 5, false).document["entries"][0]["dim"], 30);
  const auto s = cmd_decompose({2, 3, 4}, std::nullopt, true).document["entries"][0];
  EXPECT_TRUE(s["dim"].is_object());
  EXPECT_FALSE(s.contains("q"));
  EXPECT_THROW(cmd_decompose({2, 3, 4}, std::nullopt, false), UsageError);
  EXPECT_THROW(cmd_decompose({2, 3, 4}, 1, false), UsageError);
}

TEST(Cli, ZetaRowsAndExitCode) {
  const auto r = cmd_zeta(2, 8, false, false);
  EXPECT_EQ(r.exit_code, exit_ok);
  bool saw_deviation = false;
  for (const auto& row : r.document["entries"]) {
    EXPECT_NE(row["status"], "fail");
    if (row["status"] == "expected-deviation") {
      saw_deviation = true;
      EXPECT_EQ(row["family"], "eta2");
      EXPECT_TRUE(row.contains("s_sizes"));
    }
  }
  EXPECT_TRUE(saw_deviation);
  const auto agg = cmd_zeta(2, 5, false, true).document["entries"];
  const auto it = std::find_if(agg.begin(), agg.end(), [](const json& e) { return e["dimension"] == 21; });
  ASSERT_NE(it, agg.end());
  EXPECT_EQ((*it)["count"], 5);
  EXPECT_THROW(cmd_zeta(std::nullopt, 5, true, true), UsageError);
}

TEST(Cli, VerifyPasses) {
  VerifyOptions o;
  o.suite = "group";
  o.p = 3;
  o.m = 2;
  EXPECT_EQ(cmd_verify(o).exit_code, exit_ok);
  o.suite = "gl3";
  o.m = 1;
  o.seed = 7;
  EXPECT_EQ(cmd_verify(o).exit_code, exit_ok);
  o.suite = "nope";
  EXPECT_THROW(cmd_verify(o), UsageError);
  o.suite = "group";
  o.p = 4;
  EXPECT_THROW(cmd_verify(o), UsageError);
}

TEST(Cli, ParsePoint) {
  EXPECT_EQ(parse_point("2,3,4"), (ConePoint{2, 3, 4}));
  EXPECT_THROW(parse_point("1,2"), UsageError);
  EXPECT_THROW(parse_point("1,x,2"), UsageError);
  EXPECT_THROW(parse_point("3,0,1"), UsageError);
  EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Cli, Rendering) {
  const auto doc = cmd_cone(1, false).document;
  const auto csv = render(doc, Format::csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_NE(csv.find("\"(0,0,0)\""), std::string::npos);
  const auto table = render(doc, Format::table);
  EXPECT_NE(table.find("class_size"), std::string::npos);
  EXPECT_EQ(json::parse(render(doc, Format::json)), doc);
  const auto sym = render(cmd_decompose({1, 1, 1}, std::nullopt, true).document, Format::table);
  EXPECT_NE(sym.find("q^3"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const auto ok = run_cli("decompose --c 2,3,4 --q 3");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["entries"][0]["dim"], 8424);
  EXPECT_EQ(run_cli("cone --max-level 1 --format csv").code, 0);
  EXPECT_EQ(run_cli("--help").code, 0);
  EXPECT_EQ(run_cli("").code, 1);
  EXPECT_EQ(run_cli("bogus").code, 1);
  EXPECT_EQ(run_cli("decompose --c 1,2").code, 1);
  EXPECT_EQ(run_cli("decompose --c 2,3,4").code, 1);
  EXPECT_EQ(run_cli("zeta --q 2 --max-n 99").code, 1);
  EXPECT_EQ(run_cli("verify gl3 --p 3 --m 2 --c 2,2,3").code, 1);
  EXPECT_EQ(run_cli("verify group --p 3 --m 1 --format table").code, 0);
}

// Exceeding the enumeration bound is reported as a usage problem.
TEST(Cli, BoundExceeded) {
  const std::string cmd = "PSDEC_BOUND=1 " + std::string(PSDEC_CLI_PATH) + " verify group --p 3 --m 1 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

}  // namespace
