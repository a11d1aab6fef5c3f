#include "drxsim/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace drxsim {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> rows(std::span<const double> flat, std::size_t n_rows,
                                      std::size_t n_cols) {
  std::vector<std::vector<double>> out(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r)
    out[r].assign(flat.begin() + static_cast<std::ptrdiff_t>(r * n_cols),
                  flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * n_cols));
  return out;
}

void unpack(const json& j, std::span<double> dst, std::size_t n_rows, std::size_t n_cols,
            const char* what) {
  const auto m = j.get<std::vector<std::vector<double>>>();
  if (m.size() != n_rows) throw InvalidParameter(std::string("checkpoint: bad row count in ") + what);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (m[r].size() != n_cols)
      throw InvalidParameter(std::string("checkpoint: bad column count in ") + what);
    std::copy(m[r].begin(), m[r].end(), dst.begin() + static_cast<std::ptrdiff_t>(r * n_cols));
  }
}

void unpack_vec(const json& j, std::span<double> dst, const char* what) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != dst.size()) throw InvalidParameter(std::string("checkpoint: bad length of ") + what);
  std::copy(v.begin(), v.end(), dst.begin());
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  const QNetwork& net = ckpt.net;
  json j;
  j["format"] = "drxsim-qnetwork";
  j["version"] = 1;
  j["action_space_size"] = net.num_actions();
  j["layers"] = {{{"inputs", net.input_size()}, {"outputs", net.hidden_size()}, {"activation", "relu"}},
                 {{"inputs", net.hidden_size()},
                  {"outputs", net.num_actions()},
                  {"activation", to_string(net.output_activation())}}};
  j["weights"] = {rows(net.w1(), net.hidden_size(), net.input_size()),
                  rows(net.w2(), net.num_actions(), net.hidden_size())};
  j["biases"] = {std::vector<double>(net.b1().begin(), net.b1().end()),
                 std::vector<double>(net.b2().begin(), net.b2().end())};
  j["normalization"] = {{"ttnc_ttis", ckpt.norm.ttnc_scale},
                        {"age_ttis", ckpt.norm.age_scale},
                        {"queue_bits", ckpt.norm.queue_sat_bits},
                        {"remaining_ttis", ckpt.norm.remaining_scale},
                        {"max_ues", ckpt.norm.max_ues}};
  j["training"] = {{"episodes", ckpt.meta.episodes},
                   {"seed", ckpt.meta.seed},
                   {"run", ckpt.meta.run},
                   {"cum_reward_per_ue", ckpt.meta.cum_reward_per_ue},
                   {"label", ckpt.meta.label}};
  return j.dump(1);
}

Checkpoint checkpoint_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidParameter(std::string("checkpoint: malformed JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "drxsim-qnetwork")
      throw InvalidParameter("checkpoint: not a drxsim network file");
    const auto actions = j.at("action_space_size").get<std::size_t>();
    const auto& layers = j.at("layers");
    if (layers.size() != 2) throw InvalidParameter("checkpoint: expected two layers");
    const auto inputs = layers[0].at("inputs").get<std::size_t>();
    const auto hidden = layers[0].at("outputs").get<std::size_t>();
    if (layers[1].at("inputs").get<std::size_t>() != hidden ||
        layers[1].at("outputs").get<std::size_t>() != actions)
      throw InvalidParameter("checkpoint: inconsistent layer sizes");
    const auto act = output_activation_from_string(layers[1].at("activation").get<std::string>());

    Checkpoint c{QNetwork(actions, inputs, hidden, act), {}, {}};
    unpack(j.at("weights").at(0), c.net.w1(), hidden, inputs, "layer 1 weights");
    unpack(j.at("weights").at(1), c.net.w2(), actions, hidden, "layer 2 weights");
    unpack_vec(j.at("biases").at(0), c.net.b1(), "layer 1 biases");
    unpack_vec(j.at("biases").at(1), c.net.b2(), "layer 2 biases");

    const auto& n = j.at("normalization");
    c.norm.ttnc_scale = n.at("ttnc_ttis").get<double>();
    c.norm.age_scale = n.at("age_ttis").get<double>();
    c.norm.queue_sat_bits = n.at("queue_bits").get<double>();
    c.norm.remaining_scale = n.at("remaining_ttis").get<double>();
    c.norm.max_ues = n.at("max_ues").get<double>();

    const auto& t = j.at("training");
    c.meta.episodes = t.at("episodes").get<std::size_t>();
    c.meta.seed = t.at("seed").get<std::uint64_t>();
    c.meta.run = t.at("run").get<std::size_t>();
    c.meta.cum_reward_per_ue = t.at("cum_reward_per_ue").get<double>();
    c.meta.label = t.at("label").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(ckpt) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace drxsim
