// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rsma-see Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "rsma/experiments.hpp"

namespace rsma {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

// Plain median, written apart from the library's quartile helper.
double plain_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string csv_of(const std::vector<TrialReport>& reports) {
  std::ostringstream os;
  write_csv(os, reports);
  return os.str();
}

TEST(SweepAxis, Parses) {
  const SweepAxis a = parse_sweep_axis("n_t=2,4,8");
  EXPECT_EQ(a.field, "n_t");
  EXPECT_EQ(a.values, (std::vector<double>{2, 4, 8}));
  EXPECT_EQ(parse_sweep_axis("p_max_dbm=-5,12.5").values, (std::vector<double>{-5, 12.5}));
  EXPECT_THROW(parse_sweep_axis("n_t"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_axis("bogus=1,2"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_axis("n_t=2,x"), std::invalid_argument);
  EXPECT_THROW(parse_sweep_axis("=2"), std::invalid_argument);
}

TEST(ApplyField, ConvertsAndValidates) {
  SystemConfig cfg = testing::desk_config();
  apply_field(cfg, "p_max_dbm", 20.0);
  EXPECT_NEAR(cfg.p_max_w, 0.1, 1e-15);
  apply_field(cfg, "n_t", 8);
  EXPECT_EQ(cfg.n_t, 8);
  EXPECT_THROW(apply_field(cfg, "n_t", 2.5), std::invalid_argument);
  EXPECT_THROW(apply_field(cfg, "alpha", 1.5), std::exception);
  EXPECT_THROW(apply_field(cfg, "nonsense", 1.0), std::invalid_argument);
  for (const std::string& f : sweepable_fields()) EXPECT_NO_THROW(parse_sweep_axis(f + "=1"));
}

TEST(Quartiles, LinearInterpolation) {
  const Quartiles q = quartiles({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.median, 2.5);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
  EXPECT_DOUBLE_EQ(quartiles({}).median, 0.0);
  EXPECT_DOUBLE_EQ(quartiles({7}).q1, 7.0);
}

class SweepFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SystemConfig base = testing::desk_config();
    SweepSpec spec;
    spec.axes = {parse_sweep_axis("n_t=2,4,8")};
    spec.trials = 20;
    spec.schemes = {Scheme::kRsma, Scheme::kSdma, Scheme::kNoma};
    spec.master_seed = base.master_seed;
    spec.workers = 1;
    reports_ = new std::vector<TrialReport>(run_sweep(base, spec));
  }
  static void TearDownTestSuite() {
    delete reports_;
    reports_ = nullptr;
  }
  static std::vector<TrialReport>* reports_;
};

std::vector<TrialReport>* SweepFixture::reports_ = nullptr;

TEST_F(SweepFixture, OneReportPerPointTrialAndScheme) {
  ASSERT_EQ(reports_->size(), 180u);
  std::size_t idx = 0;
  for (int point = 0; point < 3; ++point) {
    for (int trial = 0; trial < 20; ++trial) {
      for (Scheme s : {Scheme::kRsma, Scheme::kSdma, Scheme::kNoma}) {
        const TrialReport& r = (*reports_)[idx++];
        EXPECT_EQ(r.point, point);
        EXPECT_EQ(r.trial, trial);
        EXPECT_EQ(r.scheme, s);
        ASSERT_EQ(r.params.size(), 1u);
        EXPECT_EQ(r.params[0].second, std::pow(2.0, point + 1));
      }
    }
  }
}

TEST_F(SweepFixture, SchemesShareTheTrialSeed) {
  for (std::size_t i = 0; i < reports_->size(); i += 3) {
    EXPECT_EQ((*reports_)[i].seed, (*reports_)[i + 1].seed);
    EXPECT_EQ((*reports_)[i].seed, (*reports_)[i + 2].seed);
  }
  // Seeds depend on the trial index only, so each point sees the same realizations.
  EXPECT_EQ((*reports_)[0].seed, (*reports_)[60].seed);
  EXPECT_NE((*reports_)[0].seed, (*reports_)[3].seed);
}

TEST_F(SweepFixture, CsvShape) {
  const std::vector<std::string> lines = split(csv_of(*reports_), '\n');
  ASSERT_EQ(lines.size(), 181u);
  EXPECT_EQ(lines[0],
            "point,trial,seed,scheme,n_t,status,see,r_sec_min,total_power_w,p_eh_sum_w,harvested_w,iterations,"
            "reason");
  const std::size_t cols = split(lines[0], ',').size();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    // a trailing empty reason drops the last cell in getline-based splitting
    const std::size_t n = split(lines[i] + " ", ',').size();
    EXPECT_EQ(n, cols) << lines[i];
  }
}

TEST_F(SweepFixture, SummaryMediansMatchTheRows) {
  std::map<std::pair<int, std::string>, std::vector<double>> all, ok;
  const std::vector<std::string> lines = split(csv_of(*reports_), '\n');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split(lines[i] + " ", ',');
    const std::pair<int, std::string> key{std::stoi(c[0]), c[3]};
    const bool good = c[5] == "ok";
    const double see = std::stod(c[6]);
    all[key].push_back(good ? see : 0.0);
    if (good) ok[key].push_back(see);
  }
  std::ostringstream js;
  write_summary_json(js, *reports_);
  const auto doc = nlohmann::json::parse(js.str());
  ASSERT_EQ(doc["groups"].size(), 9u);
  for (const auto& g : doc["groups"]) {
    const std::pair<int, std::string> key{g["point"].get<int>(), g["scheme"].get<std::string>()};
    EXPECT_EQ(g["trials"].get<int>(), 20);
    EXPECT_NEAR(g["see_all"]["median"].get<double>(), plain_median(all[key]), 1e-9);
    if (!ok[key].empty()) EXPECT_NEAR(g["see"]["median"].get<double>(), plain_median(ok[key]), 1e-9);
    EXPECT_LE(g["see_all"]["q1"].get<double>(), g["see_all"]["median"].get<double>());
    EXPECT_LE(g["see_all"]["median"].get<double>(), g["see_all"]["q3"].get<double>());
    const Scheme s = parse_scheme(key.second);
    EXPECT_NEAR(median_see(*reports_, key.first, s), plain_median(all[key]), 1e-9);
  }
}

TEST_F(SweepFixture, ReportsAgreeWithTheirStatus) {
  for (const TrialReport& r : *reports_) {
    if (r.ok) {
      EXPECT_GT(r.see, 0.0);
      EXPECT_TRUE(r.reason.empty()) << r.reason;
      EXPECT_FALSE(r.trace.empty());
    } else {
      EXPECT_FALSE(r.reason.empty());
    }
    EXPECT_FALSE(r.unexpected) << r.reason;
  }
}

TEST(Sweep, SameSeedSameBytes) {
  SystemConfig base = testing::desk_config();
  SweepSpec spec;
  spec.axes = {parse_sweep_axis("k_users=2,3")};
  spec.trials = 2;
  spec.schemes = {Scheme::kRsma, Scheme::kNoma};
  spec.master_seed = 99;
  spec.workers = 1;
  const std::string a = csv_of(run_sweep(base, spec));
  spec.workers = 2;
  const std::string b = csv_of(run_sweep(base, spec));
  EXPECT_EQ(a, b);
  spec.master_seed = 100;
  EXPECT_NE(a, csv_of(run_sweep(base, spec)));
}

TEST(Sweep, TwoAxesAreFullFactorial) {
  SystemConfig base = testing::desk_config();
  SweepSpec spec;
  spec.axes = {parse_sweep_axis("n_t=2,4"), parse_sweep_axis("m_ris=2,4,6")};
  spec.trials = 1;
  spec.master_seed = 5;
  const auto reports = run_sweep(base, spec);
  ASSERT_EQ(reports.size(), 6u);
  for (const TrialReport& r : reports) ASSERT_EQ(r.params.size(), 2u);
  EXPECT_EQ(reports[5].point, 5);
  EXPECT_EQ(reports[5].params[1].second, 6.0);
}

TEST(EmitResults, WritesBothFilesOrThrows) {
  const auto dir = std::filesystem::temp_directory_path() / "rsma_emit_test";
  std::filesystem::create_directories(dir);
  SystemConfig cfg = testing::desk_config();
  const std::uint64_t seed = 11;
  std::vector<TrialReport> reports{run_trial(cfg, generate_channels(cfg, seed), Scheme::kSdma, seed)};
  const std::string prefix = (dir / "out").string();
  emit_results(reports, prefix);
  EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".json"));
  EXPECT_THROW(emit_results(reports, "/nonexistent-dir/for/sure/out"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(TraceJson, CarriesEveryIteration) {
  SystemConfig cfg = testing::desk_config();
  const std::uint64_t seed = 3;
  const TrialReport r = run_trial(cfg, generate_channels(cfg, seed), Scheme::kRsma, seed);
  ASSERT_TRUE(r.ok) << r.reason;
  std::ostringstream os;
  write_trace_json(os, r);
  const auto doc = nlohmann::json::parse(os.str());
  ASSERT_TRUE(doc.contains("iterations"));
  EXPECT_EQ(doc["iterations"].size(), r.trace.size());
  EXPECT_NEAR(doc["iterations"].back()["eta"].get<double>(), r.see, 1e-9);
}

}  // namespace
}  // namespace rsma
