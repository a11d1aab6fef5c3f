#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "drxsim/agent.hpp"
#include "drxsim/qnetwork.hpp"

using namespace drxsim;

namespace {

std::vector<double> random_input(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Relative error between the analytic gradient and central differences.
double gradient_error(QNetwork net, std::span<const QSample> batch) {
  std::vector<double> grad;
  net.loss_and_gradient(batch, grad);
  std::vector<double> numeric(grad.size());
  const double h = 1e-4;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double keep = net.params()[i];
    net.params()[i] = keep + h;
    const double up = net.loss(batch);
    net.params()[i] = keep - h;
    const double down = net.loss(batch);
    net.params()[i] = keep;
    numeric[i] = (up - down) / (2 * h);
  }
  std::vector<double> diff(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) diff[i] = grad[i] - numeric[i];
  return norm2(diff) / std::max({norm2(grad), norm2(numeric), 1e-12});
}

// Smallest distance of any ReLU input or Huber residual to its kink. Central
// differences straddling a kink are not a valid oracle.
double kink_distance(const QNetwork& net, std::span<const QSample> batch) {
  double d = 1e9;
  const std::size_t in = net.input_size();
  for (const QSample& s : batch) {
    for (std::size_t j = 0; j < net.hidden_size(); ++j) {
      double pre = net.b1()[j];
      for (std::size_t i = 0; i < in; ++i) pre += net.w1()[j * in + i] * s.x[i];
      d = std::min(d, std::abs(pre));
    }
    d = std::min(d, std::abs(std::abs(net.forward(s.x)[s.action] - s.target) - 1.0));
  }
  return d;
}

}  // namespace

TEST_SUITE("qnetwork") {

TEST_CASE("huber closed form") {
  CHECK(huber(0.5) == 0.125);
  CHECK(huber(2.0) == 1.5);
  CHECK(huber(-2.0) == 1.5);
  CHECK(huber(1.0) == 0.5);
  CHECK(huber_derivative(0.3) == 0.3);
  CHECK(huber_derivative(-7.0) == -1.0);
}

TEST_CASE("zero network outputs zeros") {
  const QNetwork net(7);
  const std::vector<double> x(kStateSize, 0.7);
  for (double q : net.forward(x)) CHECK(q == 0.0);
  CHECK(net.params().size() == 36 * 40 + 40 + 40 * 7 + 7);
}

TEST_CASE("input dimension is checked") {
  const QNetwork net(2);
  const std::vector<double> x(35, 0.0);
  CHECK_THROWS_AS(net.forward(x), InvalidParameter);
}

TEST_CASE("forward matches a hand computation") {
  QNetwork net(2, 2, 2);
  // W1 = [[1, -1], [0.5, 0.5]], b1 = [0, -1], W2 = [[1, 2], [-1, 1]], b2 = [0.5, 0]
  net.params() = {1, -1, 0.5, 0.5, 0, -1, 1, 2, -1, 1, 0.5, 0};
  const std::vector<double> x{3, 1};
  // hidden pre = [2, 1], relu = [2, 1]; out = [2 + 2 + 0.5, -2 + 1]
  const auto q = net.forward(x);
  CHECK(q[0] == doctest::Approx(4.5));
  CHECK(q[1] == doctest::Approx(-1.0));
}

TEST_CASE("analytic gradients match central differences") {
  for (OutputActivation act : {OutputActivation::Linear, OutputActivation::Softmax}) {
    int accepted = 0;
    for (std::uint64_t draw = 0; accepted < 10; ++draw) {
      CAPTURE(draw);
      Rng rng = make_rng(61, static_cast<std::uint64_t>(act), draw);
      QNetwork net(draw % 2 ? 7 : 2, kStateSize, 40, act);
      net.init_random(rng);
      std::normal_distribution<double> bias(0.0, 0.1);
      for (double& b : net.b1()) b = bias(rng);
      for (double& b : net.b2()) b = bias(rng);
      std::vector<std::vector<double>> xs;
      std::vector<QSample> batch;
      std::uniform_int_distribution<std::size_t> pick(0, net.num_actions() - 1);
      std::uniform_real_distribution<double> target(-2.0, 2.0);
      for (int i = 0; i < 8; ++i) xs.push_back(random_input(rng, kStateSize));
      for (auto& x : xs) batch.push_back({x, pick(rng), target(rng)});
      if (kink_distance(net, batch) < 1e-3) continue;
      ++accepted;
      CHECK(gradient_error(net, batch) < 1e-4);
    }
  }
}

TEST_CASE("single-transition overfit") {
  AgentConfig cfg;
  cfg.batch_size = 1;
  Rng init = make_rng(62, 0);
  DqnAgent agent(cfg, init);
  ReplayMemory erm(10);
  Transition tr;
  Rng rng = make_rng(62, 1);
  const auto x = random_input(rng, kStateSize);
  std::copy(x.begin(), x.end(), tr.s.begin());
  tr.a = 1;
  tr.r = 0.8;
  tr.terminal = true;
  erm.push(tr);
  double loss = 1.0;
  for (int i = 0; i < 200; ++i) loss = *agent.train_step(erm, rng);
  const double q = agent.q_values(tr.s)[1];
  CHECK(huber(q - 0.8) < 1e-3);
  CHECK(loss < 1e-2);
}

TEST_CASE("argmax is invariant to positive output scaling") {
  Rng rng = make_rng(63, 0);
  QNetwork net(7);
  net.init_random(rng);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_input(rng, kStateSize);
    const auto q0 = net.forward(x);
    QNetwork scaled = net;
    for (double& w : scaled.w2()) w *= 3.7;
    for (double& b : scaled.b2()) b *= 3.7;
    Rng r1 = make_rng(0, 0);
    CHECK(select_action(q0, 0.0, r1, true) == select_action(scaled.forward(x), 0.0, r1, true));
  }
}

TEST_CASE("activation names") {
  CHECK(output_activation_from_string("softmax") == OutputActivation::Softmax);
  CHECK(to_string(OutputActivation::Linear) == "linear");
  CHECK_THROWS_AS(output_activation_from_string("tanh"), InvalidParameter);
}

}  // TEST_SUITE
