// drxsim: train and evaluate DRX signaling policies on the TTI-level cell
// simulator.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drxsim/checkpoint.hpp"
#include "drxsim/config.hpp"
#include "drxsim/experiment.hpp"

namespace fs = std::filesystem;
using namespace drxsim;

namespace {

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

int run_train(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out, std::optional<std::size_t> action_space,
              const std::vector<std::size_t>& runs, bool quiet) {
  ExperimentConfig cfg = config_or_default(config_path);
  if (seed) cfg.seed = *seed;
  if (action_space) cfg.action_space = *action_space;
  cfg.validate();

  TrainOptions opts;
  opts.out_dir = fs::path(out);
  opts.run_indices = runs;
  if (!quiet)
    opts.on_episode = [](const EpisodeSummary& s) {
      std::fprintf(stderr, "run %zu episode %zu U=%zu eps=%.3g reward/UE=%.1f sat=%.3f\n", s.run,
                   s.episode, s.num_ues, s.epsilon, s.metrics.cum_reward_per_ue,
                   s.metrics.mean_satisfaction);
    };
  const TrainResult res = train(cfg, opts);
  std::printf("trained %zu episodes; best reward/UE %.3f (run %zu, episode %zu)\n",
              res.episodes.size(), res.best.meta.cum_reward_per_ue, res.best.meta.run,
              res.best.meta.episodes);
  std::printf("wrote %s\n", (fs::path(out) / "checkpoint_best.json").c_str());
  return 0;
}

std::optional<QNetwork> network_for(PolicyKind policy, const std::string& ckpt_path,
                                    ExperimentConfig& cfg) {
  if (policy != PolicyKind::RlLearned) return std::nullopt;
  if (ckpt_path.empty()) throw InvalidParameter("--ckpt is required for --policy rl");
  Checkpoint c = load_checkpoint(ckpt_path);
  if (c.net.num_actions() != cfg.action_space)
    throw InvalidParameter("checkpoint " + ckpt_path + " has " +
                           std::to_string(c.net.num_actions()) +
                           " actions but the configuration says " +
                           std::to_string(cfg.action_space) + " (use --action-space)");
  cfg.norm = c.norm;
  return c.net;
}

void print_rows(const EvalResult& res) {
  for (const auto& r : res.rows)
    std::printf("%-9s |A|=%zu U=%zu ue=%zu activity=%.4f p95=%s sat=%.4f\n", r.policy.c_str(),
                r.action_space, r.num_ues, r.ue_id, r.activity,
                r.delay_p95_ms ? std::to_string(*r.delay_p95_ms).c_str() : "-", r.satisfaction);
}

int run_eval(const std::string& config_path, const std::string& policy_name,
             const std::string& ckpt, std::size_t num_ues, std::size_t episodes,
             const std::string& out, std::optional<std::size_t> action_space,
             std::optional<std::uint64_t> seed) {
  ExperimentConfig cfg = config_or_default(config_path);
  if (action_space) cfg.action_space = *action_space;
  if (seed) cfg.seed = *seed;
  const PolicyKind policy = policy_from_string(policy_name);
  const auto net = network_for(policy, ckpt, cfg);
  EvalOptions eo;
  eo.episodes = episodes;
  const EvalResult res = evaluate(cfg, policy, net ? &*net : nullptr, num_ues, eo);
  write_eval(out, res);
  print_rows(res);
  return 0;
}

int run_sweep(const std::string& config_path, const std::vector<std::string>& ckpts,
              std::size_t episodes, const std::string& out, std::optional<std::uint64_t> seed) {
  ExperimentConfig base = config_or_default(config_path);
  if (seed) base.seed = *seed;
  EvalOptions eo;
  eo.episodes = episodes;

  struct Job {
    PolicyKind policy;
    std::optional<QNetwork> net;
    ExperimentConfig cfg;
  };
  std::vector<Job> jobs;
  for (PolicyKind p : {PolicyKind::AlwaysOn, PolicyKind::TimersOnly, PolicyKind::Naive,
                       PolicyKind::Random})
    jobs.push_back({p, std::nullopt, base});
  for (const auto& path : ckpts) {
    Checkpoint c = load_checkpoint(path);
    ExperimentConfig cfg = base;
    cfg.action_space = c.net.num_actions();
    cfg.norm = c.norm;
    jobs.push_back({PolicyKind::RlLearned, c.net, cfg});
  }

  int unstable = 0;
  for (const auto& job : jobs) {
    for (std::size_t u = 1; u <= 9; ++u) {
      try {
        const EvalResult res =
            evaluate(job.cfg, job.policy, job.net ? &*job.net : nullptr, u, eo);
        write_eval(out, res);
        print_rows(res);
      } catch (const QueueOverflow& e) {
        ++unstable;
        std::fprintf(stderr, "%s |A|=%zu U=%zu unstable: %s\n", to_string(job.policy).c_str(),
                     job.policy == PolicyKind::RlLearned ? job.cfg.action_space : 2, u, e.what());
      }
    }
  }
  if (unstable) std::fprintf(stderr, "%d configuration(s) hit the queue cap\n", unstable);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TTI-level DRX simulator with learned MAC CE signaling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> action_space;

  auto* train_cmd = app.add_subcommand("train", "train a DQN signaling policy");
  std::vector<std::size_t> runs;
  bool quiet = false;
  train_cmd->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  train_cmd->add_option("--seed", seed, "base seed (run r uses seed + r)");
  train_cmd->add_option("--out", out, "output directory")->required();
  train_cmd->add_option("--action-space", action_space, "2 or 7")->check(CLI::IsMember({2, 7}));
  train_cmd->add_option("--run", runs, "train only these run indices");
  train_cmd->add_flag("--quiet", quiet, "no per-episode progress");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate one policy at a fixed UE count");
  std::string policy = "timers";
  std::string ckpt;
  std::size_t num_ues = 1;
  std::size_t episodes = 0;
  eval_cmd->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  eval_cmd->add_option("--policy", policy, "always_on|timers|naive|random|rl")
      ->check(CLI::IsMember({"always_on", "timers", "naive", "random", "rl"}));
  eval_cmd->add_option("--ckpt", ckpt, "checkpoint for --policy rl");
  eval_cmd->add_option("--num-ues", num_ues, "number of UEs")->check(CLI::Range(1, 9));
  eval_cmd->add_option("--episodes", episodes, "evaluation episodes (default from config)");
  eval_cmd->add_option("--out", out, "output directory")->required();
  eval_cmd->add_option("--action-space", action_space, "2 or 7")->check(CLI::IsMember({2, 7}));
  eval_cmd->add_option("--seed", seed, "evaluation seed");

  auto* sweep_cmd = app.add_subcommand("sweep-eval", "all policies x U = 1..9 into one eval.csv");
  std::vector<std::string> sweep_ckpts;
  sweep_cmd->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  sweep_cmd->add_option("--ckpt", sweep_ckpts, "learned-policy checkpoints to include");
  sweep_cmd->add_option("--episodes", episodes, "evaluation episodes (default from config)");
  sweep_cmd->add_option("--out", out, "output directory")->required();
  sweep_cmd->add_option("--seed", seed, "evaluation seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return run_train(config_path, seed, out, action_space, runs, quiet);
    if (*eval_cmd)
      return run_eval(config_path, policy, ckpt, num_ues, episodes, out, action_space, seed);
    if (*sweep_cmd) return run_sweep(config_path, sweep_ckpts, episodes, out, seed);
  } catch (const QueueOverflow& e) {
    std::cerr << "error: " << e.what() << " (raise queue_cap_bits to continue)\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
