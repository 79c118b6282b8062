// Copyright 2026 The learnfuzz Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "learnfuzz/campaign.hpp"
#include "learnfuzz/report.hpp"
#include "learnfuzz/synthetic.hpp"
#include "support.hpp"

namespace lcp = learnfuzz::campaign;
namespace lp = learnfuzz::pdf;

namespace {

lcp::CampaignConfig baseline(std::size_t n, std::vector<int> hosts = {1, 2, 3}) {
  lcp::CampaignConfig c;
  c.name = "baseline";
  c.generator = lcp::BaselineGenerator{learnfuzz::corpus::synthetic_corpus(300, 4)};
  c.n_objects = n;
  c.hosts = std::move(hosts);
  c.rng_seed = 17;
  return c;
}

lcp::CampaignConfig model(learnfuzz::sampler::Mode mode, std::size_t n) {
  lcp::CampaignConfig c;
  c.name = std::string(learnfuzz::sampler::to_string(mode));
  lcp::ModelGenerator g;
  g.params = learnfuzz::testing::small_model();
  g.gen.mode = mode;
  g.epoch = 10;
  c.generator = g;
  c.n_objects = n;
  c.rng_seed = 5;
  return c;
}

TEST(Evaluate, CorpusObjectPassesOnEveryHost) {
  const auto hosts = learnfuzz::assembler::make_hosts();
  for (const auto& h : hosts) {
    const auto ev = lcp::evaluate(h, "7 0 obj [680.6 680.6] endobj");
    EXPECT_TRUE(ev.pass) << h.name;
    EXPECT_TRUE(ev.log.empty());
    EXPECT_FALSE(ev.coverage.empty());
  }
}

TEST(Evaluate, BrokenObjectFailsWithLogLine) {
  const auto hosts = learnfuzz::assembler::make_hosts();
  const auto ev = lcp::evaluate(hosts[0], "obj [680.6 endobj");
  EXPECT_FALSE(ev.pass);
  EXPECT_EQ(ev.error_code, "unbalanced-delimiter");
  ASSERT_FALSE(ev.log.empty());
  EXPECT_TRUE(ev.log[0].starts_with("PARSE-ERROR: "));

  const auto unusable = lcp::evaluate(hosts[0], "<< >>");
  EXPECT_FALSE(unusable.pass);
  EXPECT_EQ(unusable.error_code, "object-body-unusable");
}

TEST(RunCampaign, BaselinePassesEverywhere) {
  const auto r = lcp::run_campaign(baseline(100));
  EXPECT_EQ(r.records.size(), 300u);
  EXPECT_EQ(r.pass_rate, 1.0);
  EXPECT_TRUE(r.crashes.empty());
  std::size_t largest = 0;
  for (int h = 1; h <= 3; ++h) largest = std::max(largest, r.host_coverage(h).size());
  EXPECT_GT(r.coverage.size(), largest);
}

TEST(RunCampaign, AggregatesMatchRecords) {
  const auto r = lcp::run_campaign(model(learnfuzz::sampler::Mode::sample, 40));
  std::size_t passes = 0;
  lp::CoverageSet recomputed;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].test_id, i);
    passes += r.records[i].pass;
    recomputed.merge(r.records[i].coverage);
    EXPECT_EQ(r.records[i].pass, r.records[i].error_code.empty());
  }
  EXPECT_EQ(r.pass_rate, static_cast<double>(passes) / static_cast<double>(r.records.size()));
  EXPECT_EQ(r.coverage, recomputed);
  EXPECT_GE(r.pass_rate, 0.0);
  EXPECT_LE(r.pass_rate, 1.0);
  EXPECT_EQ(r.generator, "sample");
  EXPECT_EQ(r.epoch, 10);
}

TEST(RunCampaign, Deterministic) {
  const auto a = lcp::run_campaign(model(learnfuzz::sampler::Mode::sample_space, 20));
  const auto b = lcp::run_campaign(model(learnfuzz::sampler::Mode::sample_space, 20));
  EXPECT_EQ(a.inputs, b.inputs);
  EXPECT_EQ(lcp::render_report(std::span(&a, 1)).summary_json,
            lcp::render_report(std::span(&b, 1)).summary_json);
}

TEST(RunCampaign, MoreHostsNeverShrinkCoverage) {
  const auto one = lcp::run_campaign(baseline(30, {1}));
  const auto two = lcp::run_campaign(baseline(30, {1, 3}));
  EXPECT_GE(two.coverage.size(), one.coverage.size());
  EXPECT_EQ(one.coverage.difference_size(two.coverage), 0u);
}

TEST(RunCampaign, PostMutationMakesTenVariants) {
  auto c = baseline(20, {2});
  c.post_mutation = learnfuzz::mutator::FuzzConfig{};
  c.post_mutation->rng_seed = 3;
  const auto r = lcp::run_campaign(c);
  EXPECT_EQ(r.inputs.size(), 200u);
  EXPECT_EQ(r.records.size(), 200u);
  EXPECT_TRUE(r.mutated);
  EXPECT_LT(r.pass_rate, 1.0);
}

TEST(RunCampaign, ConfigErrors) {
  auto c = baseline(0);
  EXPECT_THROW(lcp::run_campaign(c), learnfuzz::Error);
  c = baseline(5, {4});
  EXPECT_THROW(lcp::run_campaign(c), learnfuzz::Error);
  c = baseline(5, {});
  EXPECT_THROW(lcp::run_campaign(c), learnfuzz::Error);
  c = baseline(5);
  c.generator = lcp::BaselineGenerator{};
  EXPECT_THROW(lcp::run_campaign(c), learnfuzz::Error);
}

lcp::CampaignResult with_keys(std::string name, std::vector<std::uint32_t> keys) {
  lcp::CampaignResult r;
  r.name = std::move(name);
  r.coverage = lp::CoverageSet::from_keys(std::move(keys));
  return r;
}

TEST(OverlapMatrix, SetDifferenceCells) {
  const std::vector<lcp::CampaignResult> same{with_keys("A", {1, 2}), with_keys("A2", {1, 2})};
  const auto m0 = lcp::overlap_matrix(same);
  EXPECT_EQ(m0, (std::vector<std::vector<std::size_t>>{{0, 0}, {0, 0}}));

  const std::vector<lcp::CampaignResult> nested{with_keys("A", {1, 2}),
                                                with_keys("B", {1, 2, 5, 9})};
  const auto m = lcp::overlap_matrix(nested);
  EXPECT_EQ(m[0][1], 0u);
  EXPECT_EQ(m[1][0], 2u);
  EXPECT_EQ(m[0][0], 0u);
  EXPECT_THROW(lcp::overlap_matrix(std::vector<lcp::CampaignResult>{}), learnfuzz::Error);
}

TEST(OverlapMatrix, AgreesWithBruteForceOnCampaigns) {
  std::vector<lcp::CampaignResult> rs{
      lcp::run_campaign(model(learnfuzz::sampler::Mode::sample, 30)),
      lcp::run_campaign(model(learnfuzz::sampler::Mode::sample_space, 30)),
      lcp::run_campaign(baseline(30))};
  const auto m = lcp::overlap_matrix(rs);
  for (std::size_t r = 0; r < rs.size(); ++r) {
    for (std::size_t c = 0; c < rs.size(); ++c) {
      std::set<std::uint32_t> a(rs[r].coverage.keys().begin(), rs[r].coverage.keys().end());
      for (auto k : rs[c].coverage.keys()) a.erase(k);
      EXPECT_EQ(m[r][c], a.size());
      // |A| = |A \ B| + |A ∩ B|
      std::size_t both = 0;
      for (auto k : rs[r].coverage.keys()) both += rs[c].coverage.contains(lp::CoveragePoint::from_key(k));
      EXPECT_EQ(rs[r].coverage.size(), m[r][c] + both);
    }
  }
}

TEST(Report, SingleResult) {
  const std::vector<lcp::CampaignResult> rs{with_keys("only", {3, 4})};
  const auto rep = lcp::render_report(rs);
  const auto j = nlohmann::json::parse(rep.summary_json);
  EXPECT_EQ(j["overlap"]["matrix"], nlohmann::json::parse("[[0]]"));
  EXPECT_EQ(j["results"].size(), 1u);
  EXPECT_NE(rep.table.find("only"), std::string::npos);
  EXPECT_THROW(lcp::render_report(std::vector<lcp::CampaignResult>{}), learnfuzz::Error);
}

TEST(Report, CombinedRowsSortedByCoverage) {
  const std::vector<lcp::CampaignResult> rs{
      with_keys("big", {1, 2, 3, 4, 5}), with_keys("small", {1}),
      with_keys("mid", {1, 2, 3}), with_keys("tiny", {}), with_keys("huge", {1, 2, 3, 4, 5, 6, 7})};
  const auto rep = lcp::render_report(rs);
  const auto section = rep.table.find("campaigns by increasing coverage");
  ASSERT_NE(section, std::string::npos);
  std::istringstream in(rep.table.substr(section));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::vector<std::string> order;
  while (std::getline(in, line) && !line.empty()) order.push_back(line.substr(0, line.find(' ')));
  EXPECT_EQ(order, (std::vector<std::string>{"tiny", "small", "mid", "big", "huge"}));
}

TEST(Report, WritesFourFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "learnfuzz_report_test";
  std::filesystem::remove_all(dir);
  const std::vector<lcp::CampaignResult> rs{with_keys("a", {1}), with_keys("b", {2})};
  const auto rep = lcp::write_report(rs, dir);
  for (const char* f : {"summary.json", "table.txt", "matrix.txt", "crashes.log"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream in(dir / "summary.json");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), rep.summary_json);
  std::filesystem::remove_all(dir);
}

}  // namespace
