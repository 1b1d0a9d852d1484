#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_runner.hpp"

using cli_test::run;

namespace {

const std::string kCli = COBWEB_CLI_PATH;

std::string cli(const std::string& args) { return kCli + " " + args; }

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(COBWEB_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(CliLevels, Rows) {
  const auto five = run(cli("levels --max-level 5"));
  EXPECT_EQ(five.exit_code, 0);
  EXPECT_EQ(five.out, "level,size,first_label,last_label\n1,1,1,1\n2,1,2,2\n3,2,3,4\n4,3,5,7\n5,5,8,12\n");
  EXPECT_EQ(run(cli("levels -n 1")).out, "level,size,first_label,last_label\n1,1,1,1\n");
  const auto doc = nlohmann::json::parse(run(cli("levels -n 4 --format json")).out);
  EXPECT_EQ(doc["levels"][3]["size"], 3);
  EXPECT_EQ(doc["levels"][3]["first_label"], 5);
  EXPECT_EQ(doc["levels"][3]["last_label"], 7);
}

TEST(CliHasse, EdgeCounts) {
  EXPECT_EQ(count(run(cli("hasse -n 2")).out, "->"), 1u);
  EXPECT_EQ(count(run(cli("hasse -n 3")).out, "->"), 3u);
  EXPECT_EQ(count(run(cli("hasse -n 5")).out, "->"), 24u);
  EXPECT_EQ(run(cli("hasse -n 3 --format csv")).out, "from_label,to_label\n1,2\n2,3\n2,4\n");
  EXPECT_EQ(run(cli("hasse -n 3 --format svg")).exit_code, 2);
}

TEST(CliMatrix, Kinds) {
  EXPECT_EQ(run(cli("matrix --kind zeta -n 3")).out,
            "label,1,2,3,4\n1,1,1,1,1\n2,0,1,1,1\n3,0,0,1,0\n4,0,0,0,1\n");
  EXPECT_EQ(run(cli("matrix --kind mobius -n 3")).out,
            "label,1,2,3,4\n1,1,-1,0,0\n2,0,1,-1,-1\n3,0,0,1,0\n4,0,0,0,1\n");
  EXPECT_EQ(run(cli("matrix --kind eta --power 0 -n 3")).out,
            "label,1,2,3,4\n1,1,0,0,0\n2,0,1,0,0\n3,0,0,1,0\n4,0,0,0,1\n");
  EXPECT_EQ(run(cli("matrix --kind mobius --strategy matrix_inverse -n 5")).out,
            run(cli("matrix --kind mobius --strategy explicit -n 5")).out);
  const auto doc = nlohmann::json::parse(run(cli("matrix --kind eta --power 2 -n 4 --format json")).out);
  EXPECT_EQ(doc["power"], 2);
  EXPECT_EQ(doc["rows"][0][4], "3");
  EXPECT_EQ(run(cli("matrix --kind theta -n 3")).exit_code, 2);
  EXPECT_EQ(run(cli("matrix --kind eta --power -1 -n 3")).exit_code, 2);
}

TEST(CliMu, Addressing) {
  const auto by_label = run(cli("mu --from-label 3 --to-label 5"));
  EXPECT_EQ(by_label.exit_code, 0);
  EXPECT_NE(by_label.out.find("= -1\n"), std::string::npos);
  EXPECT_NE(by_label.out.find("adjacent levels"), std::string::npos);

  const auto gapped = run(cli("mu --from 1,4 --to 1,7"));
  EXPECT_EQ(gapped.out, "mu(<1,4>, <1,7>) = -28\nlabels: 5 -> 21\ncase: level gap >= 2\n");

  const auto same = run(cli("mu --from \"1,3\" --to \"2,3\""));
  EXPECT_NE(same.out.find("= 0\n"), std::string::npos);
  EXPECT_NE(same.out.find("same level"), std::string::npos);

  EXPECT_EQ(run(cli("mu --from 1,x --to 1,7")).exit_code, 2);
  EXPECT_EQ(run(cli("mu --from 4,3 --to 1,7")).exit_code, 2);
  EXPECT_EQ(run(cli("mu --from-label 0 --to-label 3")).exit_code, 2);
  EXPECT_EQ(run(cli("mu --from 1,3")).exit_code, 2);
  EXPECT_EQ(run(cli("mu")).exit_code, 2);
}

TEST(CliVerify, ExitCodes) {
  EXPECT_EQ(run(cli("verify -n 8")).exit_code, 0);
  EXPECT_EQ(run(cli("verify -n 1")).exit_code, 0);
  EXPECT_EQ(run(cli("verify -n 25")).exit_code, 2);
}

TEST(CliInvert, Roundtrip) {
  const auto point = write_temp("point.json",
                                R"({"max_level": 5, "values": [{"row": 1, "level": 3, "value": "1"}]})");
  const auto r = run(cli("invert --input " + point));
  ASSERT_EQ(r.exit_code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["roundtrip"], true);
  EXPECT_EQ(doc["f_reconstructed"]["values"].size(), 1u);
  EXPECT_EQ(doc["g"]["values"].size(), 1u + 3u + 5u);

  const auto empty = write_temp("empty.json", R"({"max_level": 4, "values": []})");
  const auto e = nlohmann::json::parse(run(cli("invert -i " + empty)).out);
  EXPECT_TRUE(e["g"]["values"].empty());
  EXPECT_EQ(e["roundtrip"], true);

  const auto bad_vertex =
      write_temp("bad.json", R"({"max_level": 4, "values": [{"row": 4, "level": 3, "value": "1"}]})");
  EXPECT_EQ(run(cli("invert -i " + bad_vertex)).exit_code, 2);
  EXPECT_EQ(run(cli("invert -i " + write_temp("broken.json", "{not json"))).exit_code, 2);
  EXPECT_EQ(run(cli("invert -i /nonexistent/file.json")).exit_code, 2);
  EXPECT_EQ(nlohmann::json::parse(run(cli("invert -i " + empty + " -n 6")).out)["max_level"], 6);
}

TEST(CliBench, Report) {
  const auto r = run(cli("bench -n 5 --reps 3"));
  ASSERT_EQ(r.exit_code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 3u);
  EXPECT_EQ(doc["rows"][0]["checksum"], doc["rows"][1]["checksum"]);
  EXPECT_EQ(doc["rows"][1]["checksum"], doc["rows"][2]["checksum"]);
}

TEST(CliGuard, EveryCommand) {
  for (const char* args : {"levels -n 6", "hasse -n 6", "matrix --kind zeta -n 6", "verify -n 6",
                           "bench -n 6 --reps 1", "mu --from 1,1 --to 1,6"})
    EXPECT_EQ(run(cli(std::string("--max-elements 10 ") + args)).exit_code, 2) << args;
  const auto f = write_temp("six.json", R"({"max_level": 6, "values": []})");
  EXPECT_EQ(run(cli("--max-elements 10 invert -i " + f)).exit_code, 2);
}

TEST(CliGuard, EnvironmentAndFlagPrecedence) {
  EXPECT_EQ(run("COBWEB_MAX_ELEMENTS=10 " + cli("levels -n 6")).exit_code, 2);
  EXPECT_EQ(run("COBWEB_MAX_ELEMENTS=10 " + cli("--max-elements 20 levels -n 6")).exit_code, 0);
  EXPECT_EQ(run("COBWEB_MAX_ELEMENTS=30000 " + cli("levels -n 21")).exit_code, 0);
  EXPECT_EQ(run(cli("levels -n 21")).exit_code, 2);
  EXPECT_EQ(run("COBWEB_MAX_ELEMENTS=lots " + cli("levels -n 3")).exit_code, 2);
}

TEST(CliOutput, Deterministic) {
  for (const char* args : {"hasse -n 6", "hasse -n 6 --format csv", "matrix --kind mobius -n 6",
                           "matrix --kind zeta -n 5 --format json", "levels -n 9"}) {
    const auto a = run(cli(args));
    const auto b = run(cli(args));
    EXPECT_EQ(a.exit_code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run(cli("")).exit_code, 2);
  EXPECT_EQ(run(cli("frobnicate")).exit_code, 2);
  EXPECT_EQ(run(cli("levels")).exit_code, 2);
  EXPECT_EQ(run(cli("--help")).exit_code, 0);
}
