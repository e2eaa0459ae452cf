// Copyright 2026 The qsuff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace qsuff;
using qsuff::io::Json;
using testing_support::diag;
using testing_support::diag_state;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qsuff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const Json& j) const {
    io::write_json_file(path(name), j);
    return path(name);
  }

  CliResult run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(QSUFF_CLI_PATH) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ComputeWorkedPair) {
  const std::string rho = write("rho.json", io::state_to_json(testing_support::half_identity()));
  const std::string sigma = write("sigma.json", io::state_to_json(testing_support::quarter_state()));
  const CliResult nats = run("compute --rho " + rho + " --sigma " + sigma + " --kind sandwiched --alpha 2");
  ASSERT_EQ(nats.code, 0);
  const Json j = Json::parse(nats.out);
  EXPECT_NEAR(j["value"].get<double>(), testing_support::kLn43, 1e-12);
  EXPECT_EQ(j["units"], "nats");

  const CliResult bits = run("compute --rho " + rho + " --sigma " + sigma + " --kind sandwiched --alpha 2 --bits");
  ASSERT_EQ(bits.code, 0);
  EXPECT_NEAR(Json::parse(bits.out)["value"].get<double>(), testing_support::kLog2of43, 1e-12);
}

TEST_F(CliTest, ComputeEqualPairIsZero) {
  const std::string s = write("s.json", io::state_to_json(random_state(3, 3, 1)));
  for (const char* kind : {"umegaki", "standard", "sandwiched", "dmax"}) {
    const CliResult r = run("compute --rho " + s + " --sigma " + s + " --kind " + kind + " --alpha 1.5");
    ASSERT_EQ(r.code, 0) << kind;
    EXPECT_NEAR(Json::parse(r.out)["value"].get<double>(), 0.0, 1e-10) << kind;
  }
}

TEST_F(CliTest, ComputeSupportViolationExitsTwo) {
  const std::string a = write("a.json", io::state_to_json(diag_state({1.0, 0.0})));
  const std::string b = write("b.json", io::state_to_json(diag_state({0.0, 1.0})));
  const CliResult r = run("compute --rho " + a + " --sigma " + b + " --kind dmax");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out)["value"], "inf");
}

TEST_F(CliTest, InputErrorsExitOne) {
  const std::string bad = write("bad.json", io::matrix_to_json(diag({0.5, 0.9})));
  const std::string good = write("good.json", io::state_to_json(diag_state({0.5, 0.5})));
  EXPECT_EQ(run("compute --rho " + bad + " --sigma " + good).code, 1);
  EXPECT_EQ(run("compute --rho " + path("missing.json") + " --sigma " + good).code, 1);
  EXPECT_EQ(run("compute --rho " + good + " --sigma " + good + " --kind sandwiched --alpha 1").code, 1);
  EXPECT_EQ(run("compute --sigma " + good).code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
}

TEST_F(CliTest, PetzWritesRecoveryChannel) {
  const std::string ch = write("deph.json", io::channel_to_json(dephasing_channel(2)));
  const std::string sigma = write("sigma.json", io::state_to_json(diag_state({0.3, 0.7})));
  ASSERT_EQ(run("petz --channel " + ch + " --sigma " + sigma + " -o " + path("petz.json")).code, 0);
  const QuantumChannel petz = io::load_channel(path("petz.json"));
  EXPECT_TRUE(petz.validate().ok);
  EXPECT_LE(choi_distance(petz, dephasing_channel(2)), 1e-10);

  const DensityMatrix omega = random_state(2, 2, 2);
  const std::string tr = write("tr.json", io::channel_to_json(partial_trace_channel(2, 2, Subsystem::Right)));
  const std::string prod = write("prod.json", io::state_to_json(DensityMatrix(tensor(random_state(2, 2, 3).matrix(), omega.matrix()))));
  ASSERT_EQ(run("petz --channel " + tr + " --sigma " + prod + " -o " + path("petz2.json")).code, 0);
  EXPECT_LE(choi_distance(io::load_channel(path("petz2.json")), append_state_channel(2, omega)), 1e-10);
}

TEST_F(CliTest, SufficiencyReports) {
  const std::string id = write("id.json", io::channel_to_json(identity_channel(2)));
  const std::string deph = write("deph.json", io::channel_to_json(dephasing_channel(2)));
  ComplexMatrix coh = diag({0.4, 0.6});
  coh(0, 1) = coh(1, 0) = 0.2;
  const std::string rho = write("rho.json", io::state_to_json(DensityMatrix(coh)));
  const std::string sigma = write("sigma.json", io::state_to_json(diag_state({0.5, 0.5})));

  const CliResult a = run("sufficiency --channel " + id + " --rho " + rho + " --sigma " + sigma);
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(Json::parse(a.out)["sufficient"].get<bool>());
  EXPECT_NEAR(Json::parse(a.out)["gap"].get<double>(), 0.0, 1e-12);

  const CliResult b = run("sufficiency --channel " + deph + " --rho " + rho + " --sigma " + sigma);
  ASSERT_EQ(b.code, 0);
  EXPECT_FALSE(Json::parse(b.out)["sufficient"].get<bool>());
  EXPECT_GT(Json::parse(b.out)["gap"].get<double>(), 0.0);

  const std::string pure = write("pure.json", io::state_to_json(diag_state({1.0, 0.0})));
  const std::string other = write("other.json", io::state_to_json(diag_state({0.0, 1.0})));
  EXPECT_EQ(run("sufficiency --channel " + id + " --rho " + pure + " --sigma " + other).code, 2);
}

TEST_F(CliTest, SufficiencyBlockInstance) {
  const StructuredInstance inst = structured_instance({{2, 1}, {1, 2}}, 4);
  const BlockStructure s = decompose_channel(inst.channel, inst.sigma);
  const std::string ch = write("ch.json", io::channel_to_json(inst.channel));
  const std::string sigma = write("sigma.json", io::state_to_json(inst.sigma));
  const std::string rho = write("rho.json", io::state_to_json(build_sufficient_instance(s, 5)));
  const CliResult r = run("sufficiency --channel " + ch + " --rho " + rho + " --sigma " + sigma);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["sufficient"].get<bool>());
}

TEST_F(CliTest, StructureCases) {
  const std::string deph = write("deph.json", io::channel_to_json(dephasing_channel(2)));
  const std::string dsig = write("dsig.json", io::state_to_json(diag_state({0.3, 0.7})));
  ASSERT_EQ(run("structure --channel " + deph + " --sigma " + dsig + " -o " + path("s1.json")).code, 0);
  const BlockStructure s1 = io::structure_from_json(io::read_json_file(path("s1.json")));
  ASSERT_EQ(s1.blocks.size(), 2u);
  EXPECT_EQ(s1.blocks[0].d_left * s1.blocks[0].d_right, 1);

  const std::string tr = write("tr.json", io::channel_to_json(partial_trace_channel(2, 3, Subsystem::Right)));
  const std::string prod = write("prod.json", io::state_to_json(DensityMatrix(
                                                  tensor(random_state(2, 2, 6).matrix(), random_state(3, 3, 7).matrix()))));
  const CliResult r2 = run("structure --channel " + tr + " --sigma " + prod);
  ASSERT_EQ(r2.code, 0);
  const Json j2 = Json::parse(r2.out);
  ASSERT_EQ(j2["blocks"].size(), 1u);
  EXPECT_EQ(j2["blocks"][0]["d_L"], 2);
  EXPECT_EQ(j2["blocks"][0]["d_R"], 3);

  const std::string id = write("id.json", io::channel_to_json(identity_channel(3)));
  const std::string full = write("full.json", io::state_to_json(random_state(3, 3, 8)));
  const CliResult r3 = run("structure --channel " + id + " --sigma " + full);
  ASSERT_EQ(r3.code, 0);
  EXPECT_EQ(Json::parse(r3.out)["blocks"][0]["d_R"], 1);

  const std::string pure = write("pure.json", io::state_to_json(diag_state({1.0, 0.0})));
  EXPECT_EQ(run("structure --channel " + deph + " --sigma " + pure).code, 1);
}

TEST_F(CliTest, ExperimentRequiresSeedAndIsDeterministic) {
  EXPECT_EQ(run("experiment --trials 1").code, 1);
  ASSERT_EQ(run("experiment --seed 5 --trials 3 --dim 3 -o " + path("r1.json")).code, 0);
  ASSERT_EQ(run("experiment --seed 5 --trials 3 --dim 3 -o " + path("r2.json")).code, 0);
  const Json a = io::read_json_file(path("r1.json"));
  const Json b = io::read_json_file(path("r2.json"));
  EXPECT_EQ(a["records"], b["records"]);
  EXPECT_EQ(a["aggregates"], b["aggregates"]);
  EXPECT_EQ(a["records"].size(), 3u);
}

TEST_F(CliTest, ExperimentFromConfigFile) {
  const std::string cfg = write("cfg.json", Json{{"trials", 2}, {"mode", "identity"}, {"alphas", {1.5, 2.0}}});
  const CliResult r = run("experiment --config " + cfg + " --seed 9");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["mode"], "identity");
  EXPECT_EQ(j["aggregates"]["total"], 2);
  EXPECT_EQ(j["aggregates"]["failed"], 0);
  EXPECT_EQ(run("experiment --seed 1 --alphas 1.0").code, 1);
}

TEST_F(CliTest, VerifySuites) {
  const CliResult lp = run("verify --suite lp");
  EXPECT_EQ(lp.code, 0);
  EXPECT_NE(lp.out.find("verify: ok"), std::string::npos);
  EXPECT_EQ(run("verify --suite bogus").code, 1);
}

TEST_F(CliTest, VersionFlag) {
  const CliResult r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(QSUFF_VERSION), std::string::npos);
}
