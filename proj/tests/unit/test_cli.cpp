// Copyright 2026 The Sybilbench Authors
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


#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sybilbench/cli.hpp"
#include "sybilbench/eval.hpp"

namespace sybilbench {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sybilbench_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "sybilbench");
    return run_cli(args);
  }

  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "cfg.json";
    write_file_atomic(p, text);
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, SynthIsByteIdenticalAcrossRuns) {
  const fs::path cfg = write_config(
      R"({"dataset": {"generator": {"num_nodes": 300, "communities": 3}}})");
  const fs::path a = dir_ / "a";
  const std::vector<std::string> args = {"synth", "--config", cfg.string(),
                                         "--seed", "7", "--out", a.string(),
                                         "--quiet"};
  const char* files[] = {"graph.txt", "labels.txt", "resistance.txt",
                         "stats.json", "manifest.json"};
  ASSERT_EQ(run(args), kExitOk);
  std::vector<std::string> first;
  for (const char* f : files) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    first.push_back(read_file(a / f));
  }
  fs::remove_all(a);
  ASSERT_EQ(run(args), kExitOk);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(read_file(a / files[i]), first[i]) << files[i];
  }
  ASSERT_EQ(run({"stats", "--from", a.string(), "--out", (dir_ / "s").string(),
                 "--quiet"}),
            kExitOk);
  const auto stats = nlohmann::json::parse(read_file(dir_ / "s" / "stats.json"));
  EXPECT_EQ(stats, nlohmann::json::parse(read_file(a / "stats.json")));
}

TEST_F(CliTest, MissingConfigIsDataError) {
  const std::string missing = (dir_ / "nope.json").string();
  ::testing::internal::CaptureStderr();
  const int code = run({"pipeline", "--config", missing});
  const std::string err = ::testing::internal::GetCapturedStderr();
  EXPECT_EQ(code, kExitData);
  EXPECT_NE(err.find(missing), std::string::npos) << err;
}

TEST_F(CliTest, UsageErrors) {
  ::testing::internal::CaptureStderr();
  EXPECT_EQ(run({"pipeline", "--no-such-flag"}), kExitUsage);
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"pipeline", "--strategy", "sideways"}), kExitUsage);
  ::testing::internal::GetCapturedStderr();
}

TEST_F(CliTest, BadConfigKeyIsDataError) {
  const fs::path cfg = write_config(R"({"attack": {"cc": 4}})");
  ::testing::internal::CaptureStderr();
  EXPECT_EQ(run({"pipeline", "--config", cfg.string()}), kExitData);
  EXPECT_NE(::testing::internal::GetCapturedStderr().find("cc"),
            std::string::npos);
}

TEST_F(CliTest, PipelineOnBundledFixture) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(run({"pipeline", "--config", SYBILBENCH_DATA_DIR "/pipeline.json",
                 "--seed", "3", "--strategy", "bfs", "--out", out.string(),
                 "--quiet"}),
            kExitOk);
  const std::string csv = read_file(out / "auc.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 9);
  EXPECT_EQ(csv.rfind("dataset,strategy,step,detector,seed,auc,runtime_ms\n", 0), 0U);
  EXPECT_NE(csv.find("community500,bfs,MB+PAE,SybilWalk,3,"), std::string::npos);
  const auto report = nlohmann::json::parse(read_file(out / "report.json"));
  EXPECT_TRUE(report.is_object());
}

}  // namespace
}  // namespace sybilbench
