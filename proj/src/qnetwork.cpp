#include "drxsim/qnetwork.hpp"

#include <algorithm>
#include <cmath>

namespace drxsim {

std::string to_string(OutputActivation a) {
  return a == OutputActivation::Linear ? "linear" : "softmax";
}

OutputActivation output_activation_from_string(const std::string& s) {
  if (s == "linear") return OutputActivation::Linear;
  if (s == "softmax") return OutputActivation::Softmax;
  throw InvalidParameter("unknown output activation '" + s + "'");
}

double huber(double residual, double delta) {
  const double a = std::abs(residual);
  return a <= delta ? 0.5 * residual * residual : delta * (a - 0.5 * delta);
}

double huber_derivative(double residual, double delta) {
  return std::clamp(residual, -delta, delta);
}

QNetwork::QNetwork(std::size_t num_actions, std::size_t input_size, std::size_t hidden_size,
                   OutputActivation output)
    : actions_(num_actions), inputs_(input_size), hidden_(hidden_size), output_(output) {
  if (actions_ == 0 || inputs_ == 0 || hidden_ == 0)
    throw InvalidParameter("network dimensions must be positive");
  params_.assign(b2_off() + actions_, 0.0);
}

void QNetwork::init_random(Rng& rng) {
  const double lim1 = std::sqrt(6.0 / static_cast<double>(inputs_ + hidden_));
  const double lim2 = std::sqrt(6.0 / static_cast<double>(hidden_ + actions_));
  std::uniform_real_distribution<double> u1(-lim1, lim1);
  std::uniform_real_distribution<double> u2(-lim2, lim2);
  for (double& w : w1()) w = u1(rng);
  for (double& w : w2()) w = u2(rng);
  std::fill(b1().begin(), b1().end(), 0.0);
  std::fill(b2().begin(), b2().end(), 0.0);
}

void QNetwork::check_input(std::span<const double> x) const {
  if (x.size() != inputs_)
    throw InvalidParameter("network input has " + std::to_string(x.size()) +
                           " entries, expected " + std::to_string(inputs_));
}

void QNetwork::forward_into(std::span<const double> x, std::vector<double>& hidden,
                            std::vector<double>& out) const {
  hidden.resize(hidden_);
  out.resize(actions_);
  const double* w = params_.data() + w1_off();
  const double* b = params_.data() + b1_off();
  for (std::size_t j = 0; j < hidden_; ++j) {
    double z = b[j];
    const double* row = w + j * inputs_;
    for (std::size_t i = 0; i < inputs_; ++i) z += row[i] * x[i];
    hidden[j] = z;
  }
  const double* v = params_.data() + w2_off();
  const double* c = params_.data() + b2_off();
  for (std::size_t a = 0; a < actions_; ++a) {
    double o = c[a];
    const double* row = v + a * hidden_;
    for (std::size_t j = 0; j < hidden_; ++j) o += row[j] * std::max(hidden[j], 0.0);
    out[a] = o;
  }
  if (output_ == OutputActivation::Softmax) {
    const double top = *std::max_element(out.begin(), out.end());
    double sum = 0.0;
    for (double& o : out) sum += (o = std::exp(o - top));
    for (double& o : out) o /= sum;
  }
}

std::vector<double> QNetwork::forward(std::span<const double> x) const {
  check_input(x);
  std::vector<double> hidden;
  std::vector<double> out;
  forward_into(x, hidden, out);
  return out;
}

double QNetwork::loss(std::span<const QSample> batch, double huber_delta) const {
  if (batch.empty()) return 0.0;
  std::vector<double> hidden;
  std::vector<double> out;
  double total = 0.0;
  for (const auto& s : batch) {
    check_input(s.x);
    forward_into(s.x, hidden, out);
    total += huber(out.at(s.action) - s.target, huber_delta);
  }
  return total / static_cast<double>(batch.size());
}

double QNetwork::loss_and_gradient(std::span<const QSample> batch, std::vector<double>& grad,
                                   double huber_delta) const {
  grad.assign(params_.size(), 0.0);
  if (batch.empty()) return 0.0;

  const double scale = 1.0 / static_cast<double>(batch.size());
  double* gw1 = grad.data() + w1_off();
  double* gb1 = grad.data() + b1_off();
  double* gw2 = grad.data() + w2_off();
  double* gb2 = grad.data() + b2_off();
  const double* w2p = params_.data() + w2_off();

  std::vector<double> hidden;
  std::vector<double> out;
  std::vector<double> d_out(actions_);
  std::vector<double> d_hidden(hidden_);
  double total = 0.0;

  for (const auto& s : batch) {
    check_input(s.x);
    if (s.action >= actions_) throw InvalidParameter("action index out of range");
    forward_into(s.x, hidden, out);
    const double residual = out[s.action] - s.target;
    total += huber(residual, huber_delta);
    const double g = huber_derivative(residual, huber_delta) * scale;

    std::fill(d_out.begin(), d_out.end(), 0.0);
    if (output_ == OutputActivation::Linear) {
      d_out[s.action] = g;
    } else {
      const double qa = out[s.action];
      for (std::size_t a = 0; a < actions_; ++a)
        d_out[a] = g * qa * ((a == s.action ? 1.0 : 0.0) - out[a]);
    }

    std::fill(d_hidden.begin(), d_hidden.end(), 0.0);
    for (std::size_t a = 0; a < actions_; ++a) {
      const double da = d_out[a];
      if (da == 0.0) continue;
      gb2[a] += da;
      const double* row = w2p + a * hidden_;
      double* grow = gw2 + a * hidden_;
      for (std::size_t j = 0; j < hidden_; ++j) {
        grow[j] += da * std::max(hidden[j], 0.0);
        d_hidden[j] += da * row[j];
      }
    }
    for (std::size_t j = 0; j < hidden_; ++j) {
      if (hidden[j] <= 0.0) continue;
      const double dz = d_hidden[j];
      gb1[j] += dz;
      double* grow = gw1 + j * inputs_;
      for (std::size_t i = 0; i < inputs_; ++i) grow[i] += dz * s.x[i];
    }
  }
  return total * scale;
}

}  // namespace drxsim
