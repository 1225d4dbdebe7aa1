#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "rigicert/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured and stderr discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(RIGICERT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rigicert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::string& name, const std::string& args) {
    const auto r = run("generate " + args + " -o " + path(name));
    EXPECT_EQ(r.code, 0) << args;
    return path(name);
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyOctahedronPasses) {
  const auto f = generate("oct.json", "--example octahedron");
  EXPECT_EQ(run("verify " + f + " --kind completability").code, 0);
}

TEST_F(Cli, VerifyFourNodeControlFailsOnConic) {
  const auto f = generate("four_node.json", "--example four_node");
  const auto r = run("verify " + f + " --kind rigidity --json");
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["failing"], nlohmann::json::array({"conic_at_infinity"}));
  EXPECT_EQ(doc["overall"], false);
}

TEST_F(Cli, VerifyMissingPositionIsInputError) {
  const auto f = generate("four_node.json", "--example four_node");
  std::ifstream in(f);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  const std::string last = ",\n      [0, 1]\n";
  const auto at = text.find(last);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, last.size(), "\n");
  write("broken.json", text);
  EXPECT_EQ(run("verify " + path("broken.json")).code, 2);
  EXPECT_EQ(run("verify " + path("absent.json")).code, 2);
}

TEST_F(Cli, VerifyAllKindsOnFixtures) {
  const auto oct = generate("oct.json", "--example octahedron");
  EXPECT_EQ(run("verify " + oct + " --kind sap").code, 0);
  const auto four = generate("four_node.json", "--example four_node");
  EXPECT_EQ(run("verify " + four + " --kind generic-rigidity").code, 1);
  EXPECT_EQ(run("verify " + oct + " --kind nonsense").code, 2);
}

TEST_F(Cli, GenerateSizes) {
  const auto fr = rigicert::parse_fixture(rigicert::read_file(generate("fr4.json", "--example fr --r 4")));
  EXPECT_EQ(fr.framework.node_count(), 10u);
  const auto gr = rigicert::parse_fixture(rigicert::read_file(generate("gr5.json", "--example gr --r 5")));
  EXPECT_EQ(gr.framework.node_count(), 15u);
  EXPECT_EQ(run("generate --example fr --r 1 -o " + path("bad.json")).code, 2);
  EXPECT_EQ(run("generate --example tensor --r 3 --graph cycle:6 -o " + path("bad.json")).code, 2);
  EXPECT_EQ(run("generate --example nope -o " + path("bad.json")).code, 2);
}

TEST_F(Cli, GenerateThenVerifyReproducesExpectations) {
  const std::vector<std::string> cases{"--example octahedron", "--example fr --r 3", "--example gr --r 4",
                                       "--example tensor --r 2 --graph cycle:5", "--example c5 --which first"};
  int k = 0;
  for (const auto& c : cases) {
    const auto f = generate("g" + std::to_string(k++) + ".json", c);
    EXPECT_EQ(run("verify " + f).code, 0) << c;
  }
}

TEST_F(Cli, StressDimensions) {
  const auto c5 = generate("c5b.json", "--example c5 --which second");
  auto doc = nlohmann::json::parse(run("stress " + c5 + " --json").out);
  // One-dimensional, matching the library and independent elimination.
  EXPECT_EQ(doc["dimension"], 1);
  const auto four = generate("four_node.json", "--example four_node");
  doc = nlohmann::json::parse(run("stress " + four + " --kind equilibrium --json").out);
  EXPECT_EQ(doc["dimension"], 1);
}

TEST_F(Cli, StressFindWritesReverifiableFixture) {
  const auto oct = generate("oct.json", "--example octahedron");
  const auto r = run("stress " + oct + " --find -o " + path("found.json") + " --json");
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["found"], true);
  EXPECT_EQ(run("verify " + path("found.json")).code, 0);
}

TEST_F(Cli, SuiteDefaultPasses) { EXPECT_EQ(run("suite").code, 0); }

TEST_F(Cli, SuiteJsonIsOneDocument) {
  const auto r = run("suite --json --random 5");
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.contains("items"));
  EXPECT_EQ(doc["overall"], r.code == 0);
}

TEST_F(Cli, SuiteDegradedToleranceNamesIt) {
  const auto r = run("suite --json --random 10 --tol rel_eig=1e-2");
  EXPECT_TRUE(r.code == 0 || r.code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["tolerance"]["rel_eig"], 1e-2);
  EXPECT_EQ(run("suite --tol rel_eig=-1").code, 2);
  EXPECT_EQ(run("suite --tol bogus=1").code, 2);
}

TEST_F(Cli, ToleranceFromEnvironment) {
  const auto f = generate("oct.json", "--example octahedron");
  const auto r = run("verify " + f + " --json");
  EXPECT_EQ(nlohmann::json::parse(r.out)["tolerance"]["rel_eig"], 1e-8);
  const std::string cmd = "RIGICERT_TOL_REL_EIG=1e-6 " + std::string(RIGICERT_CLI_PATH) + " verify " + f + " --json";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  pclose(pipe);
  EXPECT_EQ(nlohmann::json::parse(out)["tolerance"]["rel_eig"], 1e-6);
}
