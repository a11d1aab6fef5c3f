#include "drxsim/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>

#include "drxsim/agent.hpp"

namespace drxsim {

std::size_t sample_num_ues(Rng& rng, std::span<const double> weights) {
  if (weights.empty()) throw InvalidParameter("UE-count weights are empty");
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  return dist(rng) + 1;
}

std::uint64_t episode_seed(std::uint64_t base_seed, std::uint64_t episode) {
  Rng r = make_rng(base_seed, streams::kEpisode, episode);
  return r();
}

std::uint64_t eval_episode_seed(std::uint64_t base_seed, std::uint64_t episode) {
  Rng r = make_rng(base_seed, streams::kEpisode, (std::uint64_t{1} << 40) + episode);
  return r();
}

TrainResult train(const ExperimentConfig& cfg, const TrainOptions& opts) {
  cfg.validate();
  std::vector<std::size_t> runs = opts.run_indices;
  if (runs.empty()) {
    runs.resize(cfg.runs);
    std::iota(runs.begin(), runs.end(), std::size_t{0});
  }

  std::optional<CsvAppender<LearningCurveRow>> curve;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    std::ofstream(*opts.out_dir / "config.txt") << cfg.to_text();
    curve.emplace(*opts.out_dir / "learning_curve.csv");
  }

  TrainResult result;
  result.best.net = QNetwork(cfg.action_space, kStateSize, cfg.hidden_neurons, cfg.output_activation);
  result.best.norm = cfg.norm;
  double best_score = -std::numeric_limits<double>::infinity();

  for (std::size_t run : runs) {
    const std::uint64_t run_seed = cfg.seed + run;
    Rng init_rng = make_rng(run_seed, streams::kWeights);
    DqnAgent agent(cfg.agent(), init_rng);
    ReplayMemory erm(cfg.erm_size);
    Rng train_rng = make_rng(run_seed, streams::kReplay);
    Rng ue_rng = make_rng(run_seed, streams::kUeCount);

    for (std::size_t ep = 0; ep < cfg.episodes; ++ep) {
      const std::size_t num_ues =
          cfg.num_ues != 0 ? cfg.num_ues : sample_num_ues(ue_rng, cfg.ue_count_weights);
      EpisodeOptions eo;
      eo.policy = PolicyKind::RlLearned;
      eo.agent = &agent;
      eo.erm = &erm;
      eo.train_rng = &train_rng;
      eo.training = true;
      eo.epsilon = cfg.epsilon(ep);

      Simulation sim(cfg, num_ues, episode_seed(run_seed, ep), eo);
      EpisodeResult res = sim.run_episode();

      EpisodeSummary summary{run, ep, num_ues, eo.epsilon, res.metrics, res.transitions_stored,
                             res.last_loss};
      if (curve)
        curve->write({run, ep, num_ues, eo.epsilon, res.metrics.cum_reward_per_ue,
                      res.metrics.mean_satisfaction});
      if (res.metrics.cum_reward_per_ue > best_score) {
        best_score = res.metrics.cum_reward_per_ue;
        result.best.net = agent.online();
        result.best.meta = {ep + 1, run_seed, run, best_score, "best"};
      }
      if (opts.inspect) opts.inspect(summary, erm, res);
      if (opts.on_episode) opts.on_episode(summary);
      result.episodes.push_back(std::move(summary));
    }

    Checkpoint fin{agent.online(), cfg.norm, {cfg.episodes, run_seed, run, 0.0, "final"}};
    if (!result.episodes.empty())
      fin.meta.cum_reward_per_ue = result.episodes.back().metrics.cum_reward_per_ue;
    if (opts.out_dir)
      save_checkpoint(*opts.out_dir / ("checkpoint_final_run" + std::to_string(run) + ".json"), fin);
    result.final = std::move(fin);
  }

  if (opts.out_dir) {
    save_checkpoint(*opts.out_dir / "checkpoint_best.json", result.best);
    save_checkpoint(*opts.out_dir / "checkpoint_final.json", result.final);
  }
  return result;
}

EvalResult evaluate(const ExperimentConfig& cfg, PolicyKind policy, const QNetwork* net,
                    std::size_t num_ues, const EvalOptions& opts) {
  cfg.validate();
  if (num_ues < 1 || num_ues > 9) throw InvalidParameter("num_ues must lie in [1, 9]");

  std::optional<DqnAgent> agent;
  if (policy == PolicyKind::RlLearned) {
    if (net == nullptr) throw InvalidParameter("the learned policy needs a checkpoint");
    if (net->num_actions() != cfg.action_space)
      throw InvalidParameter("checkpoint has " + std::to_string(net->num_actions()) +
                             " actions but the configuration says " +
                             std::to_string(cfg.action_space));
    AgentConfig ac = cfg.agent();
    ac.hidden = net->hidden_size();
    ac.output = net->output_activation();
    agent.emplace(ac);
    agent->set_network(*net);
  }

  const std::size_t episodes = opts.episodes ? opts.episodes : cfg.eval_episodes;
  const std::size_t space = policy == PolicyKind::RlLearned ? cfg.action_space : 2;

  EvalResult out;
  std::vector<double> activity_sum(num_ues, 0.0);
  std::vector<std::vector<Tti>> pooled(num_ues);
  std::vector<std::uint64_t> histogram(space, 0);

  for (std::size_t e = 0; e < episodes; ++e) {
    EpisodeOptions eo;
    eo.policy = policy;
    eo.agent = agent ? &*agent : nullptr;
    eo.epsilon = opts.epsilon.value_or(cfg.eval_epsilon);
    eo.enforce_queue_cap = opts.enforce_queue_cap;
    eo.record_trace = opts.record_trace;
    Simulation sim(cfg, num_ues, eval_episode_seed(cfg.seed, e), eo);
    EpisodeResult res = sim.run_episode();
    for (std::size_t u = 0; u < num_ues; ++u) {
      activity_sum[u] += res.metrics.ues[u].activity;
      pooled[u].insert(pooled[u].end(), res.log.delays[u].begin(), res.log.delays[u].end());
    }
    for (std::size_t a = 0; a < space; ++a) histogram[a] += res.log.action_histogram[a];
    out.episodes.push_back(res.metrics);
    if (opts.keep_raw) out.raw.push_back(std::move(res));
  }

  const std::string name = to_string(policy);
  for (std::size_t u = 0; u < num_ues; ++u) {
    const DelaySummary d = summarize_delays(pooled[u], cfg.delta_ms);
    out.rows.push_back({name, space, num_ues, u, activity_sum[u] / static_cast<double>(episodes),
                        d.mean, d.p5, d.p50, d.p95, d.satisfaction});
  }
  const auto total = std::accumulate(histogram.begin(), histogram.end(), std::uint64_t{0});
  for (std::size_t a = 0; a < space; ++a)
    out.actions.push_back({name, space, a, action_skip_ms(a, space), histogram[a],
                           total ? static_cast<double>(histogram[a]) / static_cast<double>(total)
                                 : 0.0});
  return out;
}

void write_eval(const std::filesystem::path& out_dir, const EvalResult& res) {
  std::filesystem::create_directories(out_dir);
  CsvAppender<EvalRow> eval(out_dir / "eval.csv");
  for (const auto& r : res.rows) eval.write(r);
  CsvAppender<ActionRow> actions(out_dir / "actions.csv");
  for (const auto& r : res.actions) actions.write(r);
}

}  // namespace drxsim
