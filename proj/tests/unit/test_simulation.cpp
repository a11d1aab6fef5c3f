#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "drxsim/experiment.hpp"

using namespace drxsim;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quiet_cell() {
  ExperimentConfig c;
  c.traffic.frame_interval_ms = 1e7;  // first frame lands far past any horizon
  return c;
}

EpisodeResult run(const ExperimentConfig& cfg, PolicyKind p, std::size_t ues, std::uint64_t seed,
                  bool trace = true) {
  EpisodeOptions eo;
  eo.policy = p;
  eo.record_trace = trace;
  Simulation sim(cfg, ues, seed, eo);
  return sim.run_episode();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("zero traffic follows the 8-on/8-off pattern") {
  ExperimentConfig cfg = quiet_cell();
  cfg.steps_per_episode = 1600;
  const EpisodeResult r = run(cfg, PolicyKind::TimersOnly, 3, 1);
  for (std::size_t u = 0; u < 3; ++u)
    for (Tti t = 0; t < 1600; ++t) REQUIRE(r.log.listening[u][t] == ((t % 16) < 8 ? 1 : 0));
  CHECK(r.metrics.ues[0].activity == 0.5);
}

TEST_CASE("AlwaysOn single UE keeps a bounded queue") {
  const ExperimentConfig cfg;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const EpisodeResult r = run(cfg, PolicyKind::AlwaysOn, 1, s, false);
    CHECK(r.metrics.ues[0].activity == 1.0);
    CHECK(r.log.max_queue_bits < 16'000'000);
  }
}

TEST_CASE("trace properties under random CEs") {
  ExperimentConfig cfg;
  cfg.steps_per_episode = 100'000;
  cfg.traffic.mean_packet_bits = 300'000;  // queues stay under q_sat often enough to send CEs
  const EpisodeResult r = run(cfg, PolicyKind::Random, 2, 7);
  std::size_t ces = 0;
  for (const TtiTrace& tr : r.trace) {
    if (!tr.scheduled_ue) {
      REQUIRE_FALSE(tr.ce.has_value());
      continue;
    }
    const std::size_t u = *tr.scheduled_ue;
    REQUIRE(tr.drx[u].listening());  // sleeping UEs are never scheduled
    if (tr.ce) {
      ++ces;
      REQUIRE(tr.actions[u] == 1);
      REQUIRE(tr.ce_ue_queue_bits < cfg.q_sat_bits);  // stabilization
    }
    for (std::size_t v = 0; v < tr.actions.size(); ++v) {
      if (!tr.drx[v].listening()) REQUIRE(tr.actions[v] == -1);
    }
  }
  CHECK(ces > 1000);
  for (const auto& d : r.log.delays)
    for (Tti x : d) REQUIRE(x >= 1);
}

TEST_CASE("non-scheduled decisions never emit a CE") {
  ExperimentConfig cfg;
  cfg.steps_per_episode = 20'000;
  const EpisodeResult r = run(cfg, PolicyKind::Random, 3, 8);
  std::size_t dropped = 0;
  for (const TtiTrace& tr : r.trace)
    for (std::size_t v = 0; v < tr.actions.size(); ++v)
      if (tr.actions[v] == 1 && tr.scheduled_ue != v) ++dropped;
  CHECK(dropped > 0);
  for (const TtiTrace& tr : r.trace)
    if (tr.ce) REQUIRE(tr.scheduled_ue.has_value());
}

TEST_CASE("same seed, same episode") {
  const ExperimentConfig cfg;
  for (PolicyKind p : {PolicyKind::TimersOnly, PolicyKind::Naive, PolicyKind::Random}) {
    const EpisodeResult a = run(cfg, p, 2, 3, false);
    const EpisodeResult b = run(cfg, p, 2, 3, false);
    CHECK(a.log.listening == b.log.listening);
    CHECK(a.log.delays == b.log.delays);
    CHECK(a.log.cum_reward == b.log.cum_reward);
  }
}

TEST_CASE("streaming activity equals post-hoc activity") {
  const ExperimentConfig cfg;
  const EpisodeResult r = run(cfg, PolicyKind::Naive, 3, 4, false);
  for (std::size_t u = 0; u < 3; ++u) CHECK(r.streaming_activity[u] == r.metrics.ues[u].activity);
}

TEST_CASE("cumulative reward stays within its bounds") {
  const ExperimentConfig cfg;
  const EpisodeResult r = run(cfg, PolicyKind::Random, 2, 5, false);
  for (double c : r.log.cum_reward) {
    CHECK(c >= -0.95 * 8000);
    CHECK(c <= 8000);
  }
}

TEST_CASE("queue cap raises a named error") {
  ExperimentConfig cfg;
  cfg.queue_cap_bits = 3'000'000;
  EpisodeOptions eo;
  eo.policy = PolicyKind::TimersOnly;
  eo.enforce_queue_cap = true;
  Simulation sim(cfg, 4, 1, eo);
  CHECK_THROWS_AS(sim.run_episode(), QueueOverflow);
}

TEST_CASE("bad arguments") {
  const ExperimentConfig cfg;
  EpisodeOptions eo;
  CHECK_THROWS_AS(Simulation(cfg, 0, 1, eo), InvalidParameter);
  CHECK_THROWS_AS(Simulation(cfg, 10, 1, eo), InvalidParameter);
  eo.policy = PolicyKind::RlLearned;
  CHECK_THROWS_AS(Simulation(cfg, 1, 1, eo), InvalidParameter);
  eo.policy = PolicyKind::Naive;
  eo.training = true;
  CHECK_THROWS_AS(Simulation(cfg, 1, 1, eo), InvalidParameter);
}

}  // TEST_SUITE

TEST_SUITE("experiment") {

TEST_CASE("training smoke run and reproducibility") {
  ExperimentConfig cfg;
  cfg.runs = 1;
  cfg.episodes = 2;
  cfg.steps_per_episode = 100;
  cfg.num_ues = 2;
  cfg.batch_size = 16;
  const fs::path a = fs::temp_directory_path() / "drxsim_test_train_a";
  const fs::path b = fs::temp_directory_path() / "drxsim_test_train_b";
  fs::remove_all(a);
  fs::remove_all(b);
  TrainOptions oa;
  oa.out_dir = a;
  const TrainResult ra = train(cfg, oa);
  TrainOptions ob;
  ob.out_dir = b;
  train(cfg, ob);
  CHECK(ra.episodes.size() == 2);
  const std::string csv = slurp(a / "learning_curve.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv == slurp(b / "learning_curve.csv"));
  CHECK(slurp(a / "checkpoint_best.json") == slurp(b / "checkpoint_best.json"));
  CHECK(fs::exists(a / "checkpoint_final.json"));
  CHECK(fs::exists(a / "config.txt"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("learning-curve rows per run and episode") {
  ExperimentConfig cfg;
  cfg.runs = 3;
  cfg.episodes = 4;
  cfg.steps_per_episode = 20;
  const TrainResult r = train(cfg);
  CHECK(r.episodes.size() == 12);
  for (const auto& e : r.episodes) {
    CHECK(e.num_ues >= 1);
    CHECK(e.num_ues <= 9);
  }
}

TEST_CASE("baseline evaluation ordering at one UE") {
  ExperimentConfig cfg;
  EvalOptions eo;
  eo.episodes = 3;
  const EvalResult on = evaluate(cfg, PolicyKind::AlwaysOn, nullptr, 1, eo);
  const EvalResult timers = evaluate(cfg, PolicyKind::TimersOnly, nullptr, 1, eo);
  const EvalResult naive = evaluate(cfg, PolicyKind::Naive, nullptr, 1, eo);
  CHECK(on.rows[0].activity == 1.0);
  CHECK(timers.rows[0].activity > 0.5);
  CHECK(timers.rows[0].activity < 1.0);
  CHECK(naive.rows[0].activity < timers.rows[0].activity);
  REQUIRE(naive.actions.size() == 2);
  CHECK(naive.actions[1].skip_ms == -1);
  CHECK(naive.actions[1].count > 0);
}

TEST_CASE("checkpoint and configuration must agree") {
  ExperimentConfig cfg;
  const QNetwork net7(7);
  CHECK_THROWS_AS(evaluate(cfg, PolicyKind::RlLearned, &net7, 1), InvalidParameter);
  CHECK_THROWS_AS(evaluate(cfg, PolicyKind::RlLearned, nullptr, 1), InvalidParameter);
  CHECK_THROWS_AS(evaluate(cfg, PolicyKind::TimersOnly, nullptr, 0), InvalidParameter);
}

TEST_CASE("evaluation and training seeds differ") {
  for (std::uint64_t e = 0; e < 100; ++e) CHECK(episode_seed(1, e) != eval_episode_seed(1, e));
}

}  // TEST_SUITE
