#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "drxsim/metrics.hpp"

using namespace drxsim;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("drxsim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}
}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("nearest-rank percentiles") {
  const std::vector<Tti> d{2, 4, 6, 8};
  CHECK(nearest_rank_percentile(d, 50) == 4);
  CHECK(nearest_rank_percentile(d, 95) == 8);
  CHECK(nearest_rank_percentile(d, 5) == 2);
  CHECK(nearest_rank_percentile(d, 0) == 2);
  CHECK(nearest_rank_percentile(d, 100) == 8);
  CHECK_THROWS_AS(nearest_rank_percentile(std::vector<Tti>{}, 50), InvalidParameter);
}

TEST_CASE("finalize") {
  EpisodeLog log;
  log.steps = 4;
  log.listening = {{1, 1, 1, 1}, {1, 0, 0, 1}};
  log.delays = {{2, 4, 6, 8}, {}};
  log.cum_reward = {3.0, -1.0};
  log.final_window_satisfaction = {1.0, 1.0};
  log.action_histogram = {5, 1};
  const EpisodeMetrics m = finalize(log);
  CHECK(m.ues[0].activity == 1.0);
  CHECK(m.ues[1].activity == 0.5);
  CHECK(*m.ues[0].mean_delay == 5.0);
  CHECK(*m.ues[0].delay_p50 == 4.0);
  CHECK_FALSE(m.ues[1].mean_delay.has_value());
  CHECK_FALSE(m.ues[1].delay_p95.has_value());
  CHECK(m.cum_reward_per_ue == 1.0);
  CHECK(m.mean_activity == 0.75);
  CHECK(m.action_histogram == std::vector<std::uint64_t>{5, 1});
}

TEST_CASE("inconsistent logs are rejected") {
  EpisodeLog log;
  log.steps = 1;
  log.listening = {{1}};
  CHECK_THROWS_AS(finalize(log), InvalidParameter);
}

TEST_CASE("row round trips") {
  const LearningCurveRow lc{3, 17, 8, 0.20548540859324446, -1234.5625, 0.4};
  CHECK(LearningCurveRow::parse(lc.to_csv()) == lc);
  const EvalRow ev{"rl", 7, 8, 3, 0.61234, 12.25, 3, 11, 19, 0.97};
  CHECK(EvalRow::parse(ev.to_csv()) == ev);
  EvalRow empty{"naive", 2, 1, 0, 0.5, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 1.0};
  CHECK(EvalRow::parse(empty.to_csv()) == empty);
  const ActionRow ac{"rl", 7, 6, 12, 4242, 0.125};
  CHECK(ActionRow::parse(ac.to_csv()) == ac);
  CHECK(split_csv_line("a,,b").size() == 3);
}

TEST_CASE("headers") {
  CHECK(std::string(LearningCurveRow::header()) ==
        "run,episode,num_ues,epsilon,cum_reward_per_ue,mean_satisfaction");
  CHECK(std::string(EvalRow::header()) ==
        "policy,action_space,num_ues,ue_id,activity,mean_delay_ms,delay_p5_ms,delay_p50_ms,"
        "delay_p95_ms,satisfaction");
  CHECK(std::string(ActionRow::header()) ==
        "policy,action_space,action_index,skip_ms,count,frequency");
}

TEST_CASE("header written once across appenders") {
  const fs::path dir = scratch("csv");
  const fs::path f = dir / "learning_curve.csv";
  {
    CsvAppender<LearningCurveRow> a(f);
    a.write({0, 0, 1, 0.8, 1.0, 1.0});
    a.write({0, 1, 1, 0.8, 2.0, 1.0});
  }
  {
    CsvAppender<LearningCurveRow> b(f);
    b.write({0, 2, 1, 0.8, 3.0, 1.0});
  }
  const auto ls = lines(f);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == LearningCurveRow::header());
  CHECK(LearningCurveRow::parse(ls[3]).episode == 2);
  fs::remove_all(dir);
}

TEST_CASE("unwritable path fails with the path in the message") {
  const fs::path bad = "/nonexistent_dir_for_drxsim/x.csv";
  try {
    CsvAppender<EvalRow> a(bad);
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("nonexistent_dir_for_drxsim") != std::string::npos);
  }
}

}  // TEST_SUITE
