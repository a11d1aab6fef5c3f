#include <vector>

#include "doctest.h"
#include "drxsim/scheduler.hpp"

using namespace drxsim;

TEST_SUITE("scheduler") {

TEST_CASE("nothing eligible") {
  RoundRobinScheduler rr(3);
  std::vector<UeView> v(3, UeView{true, 0, false});
  CHECK_FALSE(rr.schedule(v).has_value());
  v[1].active = false;
  v[1].queue_bits = 10;
  CHECK_FALSE(rr.schedule(v).has_value());
}

TEST_CASE("single UE every TTI") {
  RoundRobinScheduler rr(1);
  const std::vector<UeView> v{{true, 100, false}};
  for (int i = 0; i < 10; ++i) CHECK(rr.schedule(v) == std::optional<std::size_t>{0});
}

TEST_CASE("rotation 0, 1, 2, 0, ...") {
  RoundRobinScheduler rr(3);
  const std::vector<UeView> v(3, UeView{true, 5, false});
  for (int i = 0; i < 12; ++i) CHECK(*rr.schedule(v) == static_cast<std::size_t>(i % 3));
}

TEST_CASE("pending CE makes an empty-queue UE eligible") {
  RoundRobinScheduler rr(2);
  const std::vector<UeView> v{{true, 0, false}, {true, 0, true}};
  CHECK(rr.schedule(v) == std::optional<std::size_t>{1});
}

TEST_CASE("pointer moves past the chosen UE") {
  RoundRobinScheduler rr(4);
  std::vector<UeView> v(4, UeView{true, 0, false});
  v[2].queue_bits = 1;
  CHECK(*rr.schedule(v) == 2);
  CHECK(rr.next_index() == 3);
  v[0].queue_bits = 1;
  CHECK(*rr.schedule(v) == 0);
}

TEST_CASE("fairness and no grants to sleeping UEs") {
  const std::size_t n = 5;
  RoundRobinScheduler rr(n);
  Rng rng = make_rng(41, 0);
  std::bernoulli_distribution coin(0.5);
  // Phase 1: random eligibility; never grant an inactive UE.
  for (int i = 0; i < 10'000; ++i) {
    std::vector<UeView> v(n);
    for (auto& u : v) u = {coin(rng), coin(rng) ? Bits{100} : Bits{0}, coin(rng)};
    if (auto c = rr.schedule(v)) REQUIRE(v[*c].eligible());
    else for (auto& u : v) REQUIRE_FALSE(u.eligible());
  }
  // Phase 2: fixed eligible set, counts differ by at most one in every prefix.
  std::vector<UeView> v(n, UeView{false, 0, false});
  for (std::size_t u : {0u, 2u, 3u}) v[u] = {true, 100, false};
  std::vector<int> count(n, 0);
  for (int i = 0; i < 999; ++i) {
    ++count[*rr.schedule(v)];
    const int hi = std::max({count[0], count[2], count[3]});
    const int lo = std::min({count[0], count[2], count[3]});
    REQUIRE(hi - lo <= 1);
  }
  CHECK(count[1] == 0);
  CHECK(count[4] == 0);
}

TEST_CASE("zero UEs is rejected") {
  CHECK_THROWS_AS(RoundRobinScheduler(0), InvalidParameter);
}

}  // TEST_SUITE
