#include "drxsim/simulation.hpp"

#include <cmath>
#include <string>

namespace drxsim {

QueueOverflow::QueueOverflow(std::size_t ue, Tti t, Bits bits)
    : std::runtime_error("queue overflow: UE " + std::to_string(ue) + " holds " +
                         std::to_string(bits) + " bits at TTI " + std::to_string(t)),
      ue_(ue),
      tti_(t),
      bits_(bits) {}

Simulation::Simulation(const ExperimentConfig& cfg, std::size_t num_ues,
                       std::uint64_t episode_seed, EpisodeOptions options)
    : cfg_(cfg),
      opts_(options),
      phy_(cfg.phy()),
      drx_(cfg.drx()),
      action_space_(options.policy == PolicyKind::RlLearned ? cfg.action_space : 2),
      rr_(num_ues == 0 ? 1 : num_ues),
      policy_rng_(make_rng(episode_seed, streams::kPolicy)) {
  cfg_.validate();
  if (num_ues == 0 || num_ues > 9) throw InvalidParameter("num_ues must lie in [1, 9]");
  if (opts_.policy == PolicyKind::RlLearned) {
    if (opts_.agent == nullptr) throw InvalidParameter("learned policy needs an agent");
    action_space_ = opts_.agent->online().num_actions();
    if (opts_.training && (opts_.erm == nullptr || opts_.train_rng == nullptr))
      throw InvalidParameter("training needs a replay memory and a training RNG");
  } else if (opts_.training) {
    throw InvalidParameter("only the learned policy can be trained");
  }

  histogram_.assign(action_space_, 0);
  ues_.reserve(num_ues);
  for (std::size_t u = 0; u < num_ues; ++u) {
    UeContext& ue = ues_.emplace_back(cfg_.sigma_window, cfg_.delta_ms);
    Rng traffic_rng = make_rng(episode_seed, streams::kTraffic, u);
    ue.arrivals = generate_arrivals(cfg_.traffic, cfg_.steps_per_episode, traffic_rng);
    ue.channel_rng = make_rng(episode_seed, streams::kChannel, u);
    ue.channel = initial_channel(ue.channel_rng);
    ue.ue_drx = initial_drx_state(drx_, 0);
    ue.bts_drx = ue.ue_drx;
    ue.listening_trace.reserve(cfg_.steps_per_episode);
  }
}

void Simulation::store(const PendingDecision& p, std::size_t u, const EncodedState& next,
                       bool terminal) {
  if (!opts_.training || !p.keep) return;
  Transition tr;
  tr.s = p.s;
  tr.a = p.a;
  tr.r = p.r;
  tr.s_next = next;
  tr.terminal = terminal;
  tr.ue_id = u;
  tr.decision_tti = p.tti;
  tr.decided_while_active = true;
  opts_.erm->push(std::move(tr));
  ++stored_;
}

std::size_t Simulation::decide(UeContext& ue, std::size_t u, const CellObservation& cell) {
  switch (opts_.policy) {
    case PolicyKind::AlwaysOn:
    case PolicyKind::TimersOnly:
      return 0;
    case PolicyKind::Naive:
    case PolicyKind::Random:
      return stabilize(decide_baseline(opts_.policy, ue.queue.total_bits(), policy_rng_),
                       ue.queue.total_bits(), cfg_.q_sat_bits);
    case PolicyKind::RlLearned:
      break;
  }

  UeObservation obs{ue.last_ack, ue.last_scheduled, ue.last_usage, &ue.queue, ue.bts_drx};
  ue.history.push(encode_frame(build_features(obs, cell, drx_, t_), cfg_.norm));
  const EncodedState s = ue.history.state();

  if (ue.pending) store(*ue.pending, u, s, false);

  const auto q = opts_.agent->q_values(s);
  std::size_t a = select_action(q, opts_.epsilon, policy_rng_, true);
  a = stabilize(a, ue.queue.total_bits(), cfg_.q_sat_bits);

  if (opts_.training) ue.pending = PendingDecision{s, static_cast<std::uint8_t>(a), 0.0, t_, true};
  return a;
}

void Simulation::run_tti() {
  if (finished_) throw InvalidParameter("episode already finished");
  const Tti t = t_;
  const std::size_t n = ues_.size();

  if (t > 0)
    for (auto& ue : ues_) ue.channel = step_channel(ue.channel, phy_.rho, ue.channel_rng);

  // 1. HARQ feedback for t-1.
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    if (ue.in_flight) {
      const TransportBlock& tb = *ue.in_flight;
      const bool ok = ue.in_flight_delivered;
      const FeedbackResult fb = process_feedback(ue.queue, tb, ok, t);
      if (ok) ue.bits_acked += tb.payload_bits();
      for (const auto& d : fb.delivered) {
        ue.window.push(d.delay_ttis);
        ue.delays.push_back(d.delay_ttis);
      }
      if (fb.ce_applied && drx_enabled()) ue.bts_drx = apply_ce(ue.bts_drx, drx_, *tb.ce, tb.tti);
      ue.last_ack = ok;
      ue.last_scheduled = true;
      ue.last_usage = !ok ? ResourceUsage::Failed
                          : (tb.has_payload() ? ResourceUsage::DeliveredPayload
                                              : ResourceUsage::DeliveredNoPayload);
      ue.in_flight.reset();
    } else {
      ue.last_ack = false;
      ue.last_scheduled = false;
      ue.last_usage = ResourceUsage::NotScheduled;
    }
    if (ue.bts_drx != ue.ue_drx)
      throw InvariantViolation("DRX mirror diverged for UE " + std::to_string(u) + " at TTI " +
                               std::to_string(t));
    if (ue.bits_acked + ue.queue.total_bits() != ue.bits_enqueued)
      throw InvariantViolation("bit conservation broken for UE " + std::to_string(u) +
                               " at TTI " + std::to_string(t));
  }

  // 2. CSI reports.
  for (auto& ue : ues_) update_csi(ue.channel, t, phy_.csi_period_ttis, ue_listening(ue));

  // 3. Decisions for listening UEs.
  CellObservation cell;
  for (const auto& ue : ues_) {
    if (!bts_listening(ue)) continue;
    ++cell.n_active_ues;
    cell.total_queue_bits += ue.queue.total_bits();
  }
  TtiTrace rec;
  if (opts_.record_trace) {
    rec.t = t;
    rec.actions.assign(n, -1);
    for (const auto& ue : ues_) rec.drx.push_back(ue.ue_drx);
  }
  std::vector<UeView> views(n);
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    ue.action = 0;
    const bool active = bts_listening(ue);
    if (active) {
      ue.action = decide(ue, u, cell);
      ++histogram_[ue.action];
      if (opts_.record_trace) rec.actions[u] = static_cast<int>(ue.action);
    }
    views[u] = {active, ue.queue.total_bits(), ue.action != 0};
  }

  // 4. One grant per TTI.
  const auto chosen = rr_.schedule(views);
  bool delivered = false;
  std::optional<MacCe> ce_sent;
  if (chosen) {
    UeContext& ue = ues_[*chosen];
    ce_sent = action_to_ce(ue.action, action_space_);
    const Bits tbs = select_tbs(ue.channel.h_reported, phy_);
    TransportBlock tb = assemble_tb(ue.queue, *chosen, tbs, ce_sent, t);
    // CE-only TBs carry no payload and are never lost.
    delivered = !tb.has_payload() || tb_outcome(ue.channel.h, tbs, phy_);
    if (opts_.record_trace) {
      rec.scheduled_ue = chosen;
      rec.tbs_bits = tbs;
      rec.delivered = delivered;
      rec.ce = ce_sent;
      rec.ce_ue_queue_bits = ue.queue.total_bits();
    }
    ue.in_flight = std::move(tb);
    ue.in_flight_delivered = delivered;
  }
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    if (ue.pending && ue.pending->tti == t && ue.action != 0 && chosen != u)
      ue.pending->keep = false;
  }

  // 5. DRX timers, UE side first; a CE decoded at t applies from t+1.
  std::vector<std::uint8_t> listening(n);
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    listening[u] = ue_listening(ue) ? 1 : 0;
    if (!drx_enabled()) continue;
    const bool notified = chosen == u;
    ue.ue_drx = drx_tick(ue.ue_drx, drx_, t, notified);
    if (notified && delivered && ce_sent) ue.ue_drx = apply_ce(ue.ue_drx, drx_, *ce_sent, t);
    ue.bts_drx = drx_tick(ue.bts_drx, drx_, t, notified);
  }

  // 6. Rewards and activity.
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    const double r = reward(ue.window.value(), cfg_.beta, listening[u] != 0);
    ue.cum_reward += r;
    if (ue.pending) ue.pending->r += r;
    ue.listening_trace.push_back(listening[u]);
    ue.active_ttis += listening[u];
  }

  // 7. Arrivals during t become schedulable from t+1.
  for (std::size_t u = 0; u < n; ++u) {
    UeContext& ue = ues_[u];
    while (ue.next_arrival < ue.arrivals.size() && ue.arrivals[ue.next_arrival].arrival_tti <= t) {
      const SduArrival& a = ue.arrivals[ue.next_arrival++];
      ue.queue.enqueue({ue.next_sdu_id++, a.arrival_tti, a.size_bits, a.size_bits, std::nullopt});
      ue.bits_enqueued += a.size_bits;
    }
    const Bits q = ue.queue.total_bits();
    if (q > max_queue_bits_) max_queue_bits_ = q;
    if (opts_.enforce_queue_cap && q > cfg_.queue_cap_bits) throw QueueOverflow(u, t, q);
  }

  // 8. Learning.
  if (opts_.training && t % cfg_.train_every_ttis == 0) {
    if (auto loss = opts_.agent->train_step(*opts_.erm, *opts_.train_rng)) {
      if (!std::isfinite(*loss))
        throw std::runtime_error("non-finite training loss at TTI " + std::to_string(t) +
                                 " after " + std::to_string(opts_.agent->train_steps()) +
                                 " updates");
      last_loss_ = loss;
    }
  }

  if (opts_.record_trace) trace_.push_back(std::move(rec));
  ++t_;
}

EpisodeResult Simulation::finish() {
  if (finished_) throw InvalidParameter("episode already finished");
  finished_ = true;
  const EncodedState zero{};
  for (std::size_t u = 0; u < ues_.size(); ++u) {
    UeContext& ue = ues_[u];
    if (ue.pending) store(*ue.pending, u, zero, true);
    ue.pending.reset();
  }

  EpisodeResult res;
  res.log.steps = t_;
  res.log.delta = cfg_.delta_ms;
  res.log.action_histogram = histogram_;
  res.log.max_queue_bits = max_queue_bits_;
  for (const auto& ue : ues_) {
    res.log.listening.push_back(ue.listening_trace);
    res.log.delays.push_back(ue.delays);
    res.log.cum_reward.push_back(ue.cum_reward);
    res.log.final_window_satisfaction.push_back(ue.window.value());
    res.streaming_activity.push_back(t_ == 0 ? 0.0
                                             : static_cast<double>(ue.active_ttis) /
                                                   static_cast<double>(t_));
  }
  res.metrics = finalize(res.log);
  res.trace = std::move(trace_);
  res.transitions_stored = stored_;
  res.last_loss = last_loss_;
  return res;
}

EpisodeResult Simulation::run_episode() {
  while (t_ < cfg_.steps_per_episode) run_tti();
  return finish();
}

}  // namespace drxsim
