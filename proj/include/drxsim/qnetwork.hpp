#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "drxsim/common.hpp"
#include "drxsim/features.hpp"

namespace drxsim {

enum class OutputActivation { Linear, Softmax };

std::string to_string(OutputActivation a);
OutputActivation output_activation_from_string(const std::string& s);

/// Huber loss with threshold `delta`: quadratic inside, linear outside.
double huber(double residual, double delta = 1.0);
double huber_derivative(double residual, double delta = 1.0);

/// Regression sample for one Q head: push Q(x)[action] towards target.
struct QSample {
  std::span<const double> x;
  std::size_t action = 0;
  double target = 0.0;
};

/// Single-hidden-layer perceptron input -> relu(hidden) -> actions.
/// Parameters live in one flat vector, laid out as
///   W1 (hidden x input, row-major), b1, W2 (actions x hidden, row-major), b2.
class QNetwork {
 public:
  static constexpr std::size_t kDefaultHidden = 40;

  QNetwork(std::size_t num_actions, std::size_t input_size = kStateSize,
           std::size_t hidden_size = kDefaultHidden,
           OutputActivation output = OutputActivation::Linear);

  /// Glorot-uniform weights, zero biases.
  void init_random(Rng& rng);

  std::vector<double> forward(std::span<const double> x) const;

  /// Mean Huber loss over the batch.
  double loss(std::span<const QSample> batch, double huber_delta = 1.0) const;
  /// Same loss; `grad` is overwritten with d(loss)/d(params).
  double loss_and_gradient(std::span<const QSample> batch, std::vector<double>& grad,
                           double huber_delta = 1.0) const;

  std::size_t num_actions() const { return actions_; }
  std::size_t input_size() const { return inputs_; }
  std::size_t hidden_size() const { return hidden_; }
  OutputActivation output_activation() const { return output_; }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  std::span<const double> w1() const { return {params_.data() + w1_off(), hidden_ * inputs_}; }
  std::span<const double> b1() const { return {params_.data() + b1_off(), hidden_}; }
  std::span<const double> w2() const { return {params_.data() + w2_off(), actions_ * hidden_}; }
  std::span<const double> b2() const { return {params_.data() + b2_off(), actions_}; }
  std::span<double> w1() { return {params_.data() + w1_off(), hidden_ * inputs_}; }
  std::span<double> b1() { return {params_.data() + b1_off(), hidden_}; }
  std::span<double> w2() { return {params_.data() + w2_off(), actions_ * hidden_}; }
  std::span<double> b2() { return {params_.data() + b2_off(), actions_}; }

  bool operator==(const QNetwork&) const = default;

 private:
  std::size_t w1_off() const { return 0; }
  std::size_t b1_off() const { return hidden_ * inputs_; }
  std::size_t w2_off() const { return b1_off() + hidden_; }
  std::size_t b2_off() const { return w2_off() + actions_ * hidden_; }

  void check_input(std::span<const double> x) const;
  // Hidden activations and outputs for one input; `hidden` holds the
  // pre-activation values, `out` the final outputs.
  void forward_into(std::span<const double> x, std::vector<double>& hidden,
                    std::vector<double>& out) const;

  std::size_t actions_;
  std::size_t inputs_;
  std::size_t hidden_;
  OutputActivation output_;
  std::vector<double> params_;
};

}  // namespace drxsim
