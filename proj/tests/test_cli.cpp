// End-to-end runs of the command-line front end.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(CHAINRES_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(CHAINRES_EXAMPLES) + "/" + name; }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("chainres_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, DeriveTorOverZ4) {
  auto r = cli("derive --backend mod --domain zm:4 --functor tensor:z2 --object z2 --max-degree 5");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  auto values = j["results"]["values"];
  ASSERT_EQ(values.size(), 5u);
  for (const auto& v : values) EXPECT_EQ(v["fingerprint"]["values"], json::array({2}));
  EXPECT_EQ(j["results"]["exploratory"], false);
}

TEST(Cli, CondpLie2FindsCounterexample) {
  auto r = cli("condp --backend lie2 --domain fp:3 --samples 50 --seed 7");
  EXPECT_EQ(r.code, 2);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "counterexample");
  EXPECT_EQ(j["exit_code"], 2);
}

TEST(Cli, SubtractionLawsHoldInLie2) {
  auto r = cli("check subtraction-laws --backend lie2 --domain fp:3 --samples 100");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, CondpModHolds) {
  EXPECT_EQ(cli("condp --backend mod --domain zm:4 --samples 40 --seed 1").code, 0);
}

TEST(Cli, ResolveRecordsSeedAndFingerprints) {
  auto r = cli("resolve --backend mod --domain zm:4 --object z2 --seed 5");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["seed"], 5);
  EXPECT_EQ(j["config"]["max_degree"], 3);
  EXPECT_EQ(j["config"]["dim_cap"], 512);
  EXPECT_EQ(j["config"]["budget"], 1000000);
}

TEST(Cli, LesTorSequence) {
  auto r = cli("les --backend mod --domain zm:4 --functor tensor:z2 --ses tor --max-degree 4");
  ASSERT_EQ(r.code, 0) << r.out;
}

TEST(Cli, HomologyFromInputDocument) {
  auto r = cli("homology --backend mod --domain zm:4 --input " + data("periodic_complex.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  ASSERT_FALSE(j["results"].empty());
}

TEST(Cli, BrokenComplexIsUsageError) {
  EXPECT_EQ(cli("homology --backend mod --domain zm:4 --input " + data("broken_complex.json")).code, 3);
  EXPECT_EQ(cli("resolve --backend mod --domain zm:4 --object @" + data("malformed.json")).code, 3);
}

TEST(Cli, ObjectFromFile) {
  auto r = cli("resolve --backend mod --domain zm:4 --object @" + data("z2z4.json"));
  EXPECT_EQ(r.code, 0);
  auto h = cli("derive --backend lie2 --domain fp:3 --object @" + data("heisenberg.json") + " --max-degree 2");
  EXPECT_NE(h.code, 3);
  EXPECT_EQ(cli("resolve --backend lie2 --domain fp:3 --object @" + data("z2z4.json")).code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 3);
  EXPECT_EQ(cli("frobnicate").code, 3);
  EXPECT_EQ(cli("derive --domain zm:x").code, 3);
  EXPECT_EQ(cli("derive --backend plain").code, 3);
  EXPECT_EQ(cli("derive --object y7").code, 3);
  EXPECT_EQ(cli("check no-such-suite").code, 3);
  EXPECT_EQ(cli("simplicial-compare --backend lie2 --domain fp:3").code, 3);
}

TEST(Cli, ObstructionIsInconclusive) {
  // 65 summands exceed a dimension cap of 64
  EXPECT_EQ(cli("resolve --backend mod --domain zm:4 --object free:65 --dim-cap 64").code, 2);
}

TEST(Cli, Determinism) {
  const std::string cmd = "derive --backend mod --domain zm:4 --functor tensor:z2 --object z2,z4 --max-degree 4 --seed 3";
  auto a = cli(cmd), b = cli(cmd);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFileAndReplay) {
  auto path = scratch("derive.json");
  auto r = cli("derive --backend mod --domain zm:4 --functor tensor:z2 --object z2 --max-degree 4 -o " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  auto text = slurp(path);
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(cli("replay " + path.string()).code, 0);

  auto tampered = scratch("tampered.json");
  auto j = json::parse(text);
  j["results"]["values"][0]["fingerprint"]["values"] = json::array({4});
  std::ofstream(tampered) << j.dump(2) << "\n";
  EXPECT_EQ(cli("replay " + tampered.string()).code, 1);
  EXPECT_EQ(cli("replay " + scratch("missing.json").string()).code, 3);
}

TEST(Cli, ReplayOfObstructionReport) {
  auto path = scratch("condp.json");
  ASSERT_EQ(cli("condp --backend lie2 --domain fp:3 --samples 20 --seed 7 -o " + path.string()).code, 2);
  EXPECT_EQ(cli("replay " + path.string()).code, 0);
}

TEST(Cli, EverySubcommandRuns) {
  EXPECT_EQ(cli("horseshoe --backend mod --domain zm:4 --object z2 --ses tor").code, 0);
  EXPECT_EQ(cli("homotopy --backend mod --domain zm:4 --object z2,z4 --seeds 1,2").code, 0);
  EXPECT_EQ(cli("moore --backend mod --domain zm:4 --object z2 --simplicial cech").code, 0);
  EXPECT_EQ(cli("simplicial-compare --backend mod --domain zm:4 --functor tensor:z2 --object z2").code, 0);
  EXPECT_EQ(cli("check functor-properties --backend mod --domain zm:4 --functor tensor:z2 --samples 20").code, 0);
  EXPECT_EQ(cli("check simplicial --backend lie2 --domain fp:3 --object a2").code, 0);
}
