// Copyright 2026 The evcharge Authors. All Rights Reserved.
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

#include "evcharge/sweep.hpp"

#include <filesystem>

#include "evcharge/desk.hpp"
#include "evcharge/error.hpp"
#include "evcharge/report.hpp"
#include "gtest/gtest.h"

namespace evcharge {
namespace fs = std::filesystem;
namespace {

ScenarioConfig small(std::uint64_t seed, Profile profile) {
  DeskOptions o;
  o.seed = seed;
  o.substations = 3;
  o.stations = 6;
  o.vehicles = 40;
  o.days = 1;
  o.agents.profile = profile;
  return make_desk_scenario(o);
}

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::path("sweep_test_out") /
            ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

TEST_F(SweepTest, SingleJobMatchesDirectRun) {
  const auto c = small(1, Profile::linucb_disjoint);
  const auto res = sweep({{c, root_ / "a"}}, 4);
  ASSERT_EQ(res.size(), 1u);
  ASSERT_TRUE(res[0].ok) << res[0].error;
  EXPECT_EQ(read_text_file(root_ / "a" / "metrics.json"), serialize_metrics(run(c)));
  for (const auto& [name, body] : render_report(run(c))) {
    EXPECT_EQ(read_text_file(root_ / "a" / name), body) << name;
  }
  EXPECT_TRUE(fs::exists(root_ / "a" / "scenario.json"));
}

TEST_F(SweepTest, ParallelEqualsSerial) {
  std::vector<SweepJob> par, ser;
  int i = 0;
  for (auto p : {Profile::constant_loading, Profile::random, Profile::linucb_hybrid,
                 Profile::q_learning}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto c = small(seed, p);
      par.push_back({c, root_ / "par" / std::to_string(i)});
      ser.push_back({c, root_ / "ser" / std::to_string(i)});
      ++i;
    }
  }
  for (const auto& r : sweep(par, 4)) EXPECT_TRUE(r.ok) << r.error;
  for (const auto& r : sweep(ser, 1)) EXPECT_TRUE(r.ok) << r.error;
  for (int j = 0; j < i; ++j) {
    const auto n = std::to_string(j);
    for (const char* f : {"metrics.json", "substation_daily.csv", "rewards_daily.csv"}) {
      EXPECT_EQ(read_text_file(root_ / "par" / n / f),
                read_text_file(root_ / "ser" / n / f));
    }
  }
}

TEST_F(SweepTest, DuplicateOutputDirectoriesRejected) {
  const auto c = small(1, Profile::random);
  EXPECT_THROW(sweep({{c, root_ / "x"}, {c, root_ / "y" / ".." / "x"}}, 2), ConfigError);
  EXPECT_FALSE(fs::exists(root_ / "x"));
}

TEST_F(SweepTest, FailingJobDoesNotStopOthers) {
  auto bad = small(1, Profile::random);
  bad.stations[0].substation = 99;
  const auto good = small(2, Profile::random);
  const auto res = sweep({{good, root_ / "g1"}, {bad, root_ / "b"}, {good, root_ / "g2"}}, 2);
  ASSERT_EQ(res.size(), 3u);
  EXPECT_TRUE(res[0].ok);
  EXPECT_FALSE(res[1].ok);
  EXPECT_FALSE(res[1].error.empty());
  EXPECT_TRUE(res[2].ok);
  EXPECT_EQ(res[1].out_dir, root_ / "b");
  EXPECT_EQ(read_text_file(root_ / "g1" / "metrics.json"),
            read_text_file(root_ / "g2" / "metrics.json"));
}

TEST_F(SweepTest, RejectsBadParallelism) {
  EXPECT_THROW(sweep({{small(1, Profile::random), root_ / "a"}}, 0), ConfigError);
}

}  // namespace
}  // namespace evcharge
