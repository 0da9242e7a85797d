// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "contractlab/experiment.h"

#include <sstream>
#include <string>

#include "contractlab/instance_io.h"
#include "gtest/gtest.h"

namespace contractlab {
namespace {

TEST(ExperimentConfigTest, JsonRoundTrip) {
  ExperimentConfig c;
  c.command = "learn";
  c.instance_path = "x.json";
  c.which = "contract";
  c.H = 2;
  c.eps = 0.2;
  c.seeds = {3, 1, 2};
  c.init_accuracy = 0.3;
  c.refinement_samples = 12345;
  c.jobs = 3;
  c.output = "out.csv";
  ExperimentConfig back = ExperimentConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.seeds, c.seeds);
  EXPECT_EQ(back.refinement_samples, 12345);
}

TEST(ExperimentConfigTest, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(ExperimentConfig::FromJson(R"({"bogus": 1})"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson(R"({"eps": "x"})"), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::FromJson("{"), std::invalid_argument);
}

TEST(ExperimentConfigTest, SeedList) {
  ExperimentConfig c;
  c.seed = 9;
  EXPECT_EQ(c.SeedList(), (std::vector<uint64_t>{9}));
  c.num_seeds = 3;
  EXPECT_EQ(c.SeedList(), (std::vector<uint64_t>{0, 1, 2}));
  c.seeds = {5};
  EXPECT_EQ(c.SeedList(), (std::vector<uint64_t>{5}));
}

TEST(RunCommandTest, SolveFigureTable) {
  ExperimentConfig c;
  c.command = "solve";
  c.instance_path = std::string(CONTRACTLAB_DATA_DIR) + "/figure_table.json";
  std::ostringstream out, err;
  EXPECT_EQ(RunCommand(c, out, err), 0);
  EXPECT_NE(out.str().find("utility: 0\n"), std::string::npos) << out.str();
}

TEST(RunCommandTest, ValidateBadFileExitsNonzero) {
  ExperimentConfig c;
  c.command = "validate";
  c.instance_path = std::string(CONTRACTLAB_DATA_DIR) + "/pmf_sum_bad.json";
  std::ostringstream out, err;
  EXPECT_EQ(RunCommand(c, out, err), 1);
  EXPECT_NE(out.str().find("pmf sum"), std::string::npos);
}

TEST(RunCommandTest, LearnRowsSortedBySeed) {
  ExperimentConfig c;
  c.command = "learn";
  c.which = "action";
  c.instance_path = std::string(CONTRACTLAB_DATA_DIR) + "/figure_table.json";
  c.seeds = {5, 2, 9};
  c.samples_per_action = 500;
  c.jobs = 2;
  c.output = ::testing::TempDir() + "/learn_sorted.csv";
  std::ostringstream out, err;
  ASSERT_EQ(RunCommand(c, out, err), 0) << err.str();
  std::istringstream csv(ReadFile(c.output));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "# schema: contractlab.learn.v1");
  std::getline(csv, line);
  std::vector<std::string> seeds;
  while (std::getline(csv, line)) seeds.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(seeds, (std::vector<std::string>{"2", "5", "9"}));
}

TEST(RunCommandTest, UnknownCommandThrows) {
  ExperimentConfig c;
  c.command = "nope";
  std::ostringstream out, err;
  EXPECT_THROW(RunCommand(c, out, err), std::invalid_argument);
}

}  // namespace
}  // namespace contractlab
