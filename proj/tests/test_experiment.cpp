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

#include "helpers.hpp"

using namespace qsuff;

namespace {

ExperimentConfig small_config(ExperimentMode mode, int trials) {
  ExperimentConfig c;
  c.dim = 4;
  c.env_dim = 3;
  c.trials = trials;
  c.seed = 77;
  c.mode = mode;
  return c;
}

}  // namespace

TEST(Experiment, IdentityTrialHasZeroGap) {
  const ExperimentReport rep = run_experiment(small_config(ExperimentMode::Identity, 1));
  ASSERT_EQ(rep.records.size(), 1u);
  const TrialRecord& r = rep.records[0];
  EXPECT_EQ(r.kind, "identity");
  ASSERT_TRUE(r.gap2.has_value());
  EXPECT_NEAR(*r.gap2, 0.0, 1e-10);
  EXPECT_TRUE(r.recovered);
  EXPECT_TRUE(r.passed);
}

TEST(Experiment, RandomSweepRespectsDpi) {
  const ExperimentReport rep = run_experiment(small_config(ExperimentMode::Random, 20));
  EXPECT_EQ(rep.aggregates.total, 20);
  EXPECT_EQ(rep.aggregates.errors, 0);
  EXPECT_GE(rep.aggregates.min_gap, -1e-9);
  EXPECT_EQ(rep.aggregates.biconditional_violations, 0);
}

TEST(Experiment, SufficientSweepRecovers) {
  const ExperimentReport rep = run_experiment(small_config(ExperimentMode::Sufficient, 8));
  EXPECT_EQ(rep.aggregates.failed, 0);
  EXPECT_EQ(rep.aggregates.recovered, 8);
  EXPECT_LE(rep.aggregates.max_recovery_error_constructed, 1e-8);
  EXPECT_GE(rep.aggregates.min_three_lines_slack, -1e-9);
}

TEST(Experiment, DeterministicPerSeed) {
  const ExperimentConfig c = small_config(ExperimentMode::Mixed, 6);
  EXPECT_EQ(io::report_to_json(run_experiment(c)).dump(), io::report_to_json(run_experiment(c)).dump());
  ExperimentConfig other = c;
  other.seed = 78;
  EXPECT_NE(io::report_to_json(run_experiment(c)).dump(), io::report_to_json(run_experiment(other)).dump());
}

TEST(Experiment, AggregatesRecomputableFromRecords) {
  const ExperimentReport rep = run_experiment(small_config(ExperimentMode::Mixed, 6));
  const ExperimentAggregates again = aggregate(rep.records);
  EXPECT_EQ(again.total, rep.aggregates.total);
  EXPECT_EQ(again.passed, rep.aggregates.passed);
  EXPECT_EQ(again.min_gap, rep.aggregates.min_gap);
  EXPECT_EQ(again.max_recovery_error_constructed, rep.aggregates.max_recovery_error_constructed);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig c;
  c.trials = 0;
  EXPECT_THROW(run_experiment(c), ValidationError);
  c = ExperimentConfig{};
  c.alphas = {1.0005};
  EXPECT_THROW(c.validate(), ValidationError);
  c = ExperimentConfig{};
  c.dim = 1;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Experiment, ConfigJsonRoundTrip) {
  ExperimentConfig c = small_config(ExperimentMode::Sufficient, 3);
  c.alphas = {1.25, 3.0};
  c.tolerances.suff = 1e-5;
  const ExperimentConfig back = io::config_from_json(io::Json::parse(io::config_to_json(c).dump()));
  EXPECT_EQ(io::config_to_json(back), io::config_to_json(c));
  EXPECT_EQ(io::config_from_json(io::Json::object()).trials, ExperimentConfig{}.trials);
  EXPECT_THROW(io::config_from_json(io::Json::parse(R"({"trials": "many"})")), ParseError);
  EXPECT_THROW(parse_experiment_mode("sometimes"), DomainError);
}

TEST(Experiment, ReportCarriesVersionAndConfig) {
  const io::Json j = io::report_to_json(run_experiment(small_config(ExperimentMode::Identity, 2)));
  EXPECT_EQ(j["version"], QSUFF_VERSION);
  EXPECT_EQ(j["config"]["seed"], 77);
  EXPECT_EQ(j["records"].size(), 2u);
}
