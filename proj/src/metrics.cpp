#include "drxsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace drxsim {

double nearest_rank_percentile(std::span<const Tti> sorted, double q) {
  if (sorted.empty()) throw InvalidParameter("percentile of an empty list");
  if (q < 0.0 || q > 100.0) throw InvalidParameter("percentile must lie in [0, 100]");
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return static_cast<double>(sorted[rank - 1]);
}

DelaySummary summarize_delays(std::vector<Tti> delays, Tti delta) {
  DelaySummary s;
  if (delays.empty()) return s;
  std::sort(delays.begin(), delays.end());
  const double sum = std::accumulate(delays.begin(), delays.end(), 0.0);
  s.mean = sum / static_cast<double>(delays.size());
  s.p5 = nearest_rank_percentile(delays, 5.0);
  s.p50 = nearest_rank_percentile(delays, 50.0);
  s.p95 = nearest_rank_percentile(delays, 95.0);
  const auto ok = std::count_if(delays.begin(), delays.end(), [&](Tti d) { return d <= delta; });
  s.satisfaction = static_cast<double>(ok) / static_cast<double>(delays.size());
  return s;
}

EpisodeMetrics finalize(const EpisodeLog& log) {
  const std::size_t n = log.listening.size();
  if (log.delays.size() != n || log.cum_reward.size() != n ||
      log.final_window_satisfaction.size() != n)
    throw InvalidParameter("episode log has inconsistent UE counts");
  if (log.steps == 0) throw InvalidParameter("episode log is empty");

  EpisodeMetrics m;
  m.num_ues = n;
  m.action_histogram = log.action_histogram;
  m.max_queue_bits = log.max_queue_bits;
  m.ues.resize(n);
  double reward_sum = 0.0;
  double sat_sum = 0.0;
  double act_sum = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    UeMetrics& um = m.ues[u];
    const auto& w = log.listening[u];
    const auto on = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
    um.activity = static_cast<double>(on) / static_cast<double>(log.steps);
    const DelaySummary d = summarize_delays(log.delays[u], log.delta);
    um.delivered = log.delays[u].size();
    um.mean_delay = d.mean;
    um.delay_p5 = d.p5;
    um.delay_p50 = d.p50;
    um.delay_p95 = d.p95;
    um.satisfaction = d.satisfaction;
    um.satisfaction_final = log.final_window_satisfaction[u];
    um.cum_reward = log.cum_reward[u];
    reward_sum += um.cum_reward;
    sat_sum += um.satisfaction;
    act_sum += um.activity;
  }
  if (n > 0) {
    m.cum_reward_per_ue = reward_sum / static_cast<double>(n);
    m.mean_satisfaction = sat_sum / static_cast<double>(n);
    m.mean_activity = act_sum / static_cast<double>(n);
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidParameter("not a number: '" + s + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

template <typename T>
T parse_int(const std::string& s) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidParameter("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> expect_fields(const std::string& line, std::size_t n) {
  auto f = split_csv_line(line);
  if (f.size() != n)
    throw InvalidParameter("expected " + std::to_string(n) + " CSV fields, got " +
                           std::to_string(f.size()));
  return f;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const char* LearningCurveRow::header() {
  return "run,episode,num_ues,epsilon,cum_reward_per_ue,mean_satisfaction";
}

std::string LearningCurveRow::to_csv() const {
  return std::to_string(run) + ',' + std::to_string(episode) + ',' + std::to_string(num_ues) +
         ',' + fmt_double(epsilon) + ',' + fmt_double(cum_reward_per_ue) + ',' +
         fmt_double(mean_satisfaction);
}

LearningCurveRow LearningCurveRow::parse(const std::string& line) {
  const auto f = expect_fields(line, 6);
  return {parse_int<std::size_t>(f[0]), parse_int<std::size_t>(f[1]),
          parse_int<std::size_t>(f[2]), parse_double(f[3]),
          parse_double(f[4]), parse_double(f[5])};
}

const char* EvalRow::header() {
  return "policy,action_space,num_ues,ue_id,activity,mean_delay_ms,delay_p5_ms,delay_p50_ms,"
         "delay_p95_ms,satisfaction";
}

std::string EvalRow::to_csv() const {
  return policy + ',' + std::to_string(action_space) + ',' + std::to_string(num_ues) + ',' +
         std::to_string(ue_id) + ',' + fmt_double(activity) + ',' + fmt_opt(mean_delay_ms) + ',' +
         fmt_opt(delay_p5_ms) + ',' + fmt_opt(delay_p50_ms) + ',' + fmt_opt(delay_p95_ms) + ',' +
         fmt_double(satisfaction);
}

EvalRow EvalRow::parse(const std::string& line) {
  const auto f = expect_fields(line, 10);
  EvalRow r;
  r.policy = f[0];
  r.action_space = parse_int<std::size_t>(f[1]);
  r.num_ues = parse_int<std::size_t>(f[2]);
  r.ue_id = parse_int<std::size_t>(f[3]);
  r.activity = parse_double(f[4]);
  r.mean_delay_ms = parse_opt(f[5]);
  r.delay_p5_ms = parse_opt(f[6]);
  r.delay_p50_ms = parse_opt(f[7]);
  r.delay_p95_ms = parse_opt(f[8]);
  r.satisfaction = parse_double(f[9]);
  return r;
}

const char* ActionRow::header() {
  return "policy,action_space,action_index,skip_ms,count,frequency";
}

std::string ActionRow::to_csv() const {
  return policy + ',' + std::to_string(action_space) + ',' + std::to_string(action_index) + ',' +
         std::to_string(skip_ms) + ',' + std::to_string(count) + ',' + fmt_double(frequency);
}

ActionRow ActionRow::parse(const std::string& line) {
  const auto f = expect_fields(line, 6);
  return {f[0], parse_int<std::size_t>(f[1]), parse_int<std::size_t>(f[2]), parse_int<int>(f[3]),
          parse_int<std::uint64_t>(f[4]), parse_double(f[5])};
}

template <typename Row>
CsvAppender<Row>::CsvAppender(std::filesystem::path path) : path_(std::move(path)) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path_, ec) ||
                     std::filesystem::file_size(path_, ec) == 0;
  out_.open(path_, std::ios::app);
  if (!out_) throw std::runtime_error("cannot open " + path_.string() + " for writing");
  if (fresh) {
    out_ << Row::header() << '\n';
    out_.flush();
  }
}

template <typename Row>
void CsvAppender<Row>::write(const Row& row) {
  out_ << row.to_csv() << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_.string());
}

template class CsvAppender<LearningCurveRow>;
template class CsvAppender<EvalRow>;
template class CsvAppender<ActionRow>;

}  // namespace drxsim
