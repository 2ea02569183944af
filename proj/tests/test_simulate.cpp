#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "signvote/dynamics.hpp"
#include "signvote/error.hpp"
#include "signvote/simulate.hpp"
#include "signvote/structure.hpp"
#include "support/instances.hpp"

using namespace signvote;
using testsupport::Plant;

TEST_CASE("trial seeds are distinct and stable") {
  CHECK(trial_seed(1, 0) == trial_seed(1, 0));
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("alias sampler follows edge weights") {
  const auto g = from_edge_list(
      std::vector<SignedEdge>{{0, 0, 1.0}, {0, 1, 2.0}, {0, 2, -3.0}, {0, 3, 4.0}, {1, 0, 1.0}, {2, 0, 1.0}, {3, 0, 1.0}});
  const NeighborSampler s(g);
  CHECK(s.degree(0) == 4);
  Rng rng(5);
  std::vector<double> hits(4, 0.0);
  const int draws = 400000;
  for (int i = 0; i < draws; ++i) hits[s.sample(0, rng)] += 1;
  for (int k = 0; k < 4; ++k) {
    const double p = (k + 1) / 10.0;
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(hits[k] / draws - p) < 4 * se);
  }
  CHECK(s.sample(1, rng) == 0);
}

TEST_CASE("one step copies across positive edges and flips across negative") {
  const auto g = from_edge_list(std::vector<SignedEdge>{{0, 1, 1.0}, {1, 2, -1.0}, {2, 0, 1.0}});
  Rng rng(1);
  const Colors next = mc_step(g, Colors{1, 0, 1}, rng);
  CHECK(next == Colors{0, 0, 1});
}

TEST_CASE("results do not depend on the thread count") {
  testsupport::Rng gen(41);
  const auto g = testsupport::arbitrary(gen, 25, 0.15, true);
  const std::vector<NodeId> seeds{1, 4, 9};
  McOptions one, four;
  one.threads = 1;
  four.threads = 4;
  one.per_node = four.per_node = true;
  const auto a = mc_run(g, seeds, 8, 500, 77, one);
  const auto b = mc_run(g, seeds, 8, 500, 77, four);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.node_frequency == b.node_frequency);
}

TEST_CASE("Monte Carlo means track the exact expectation") {
  testsupport::Rng gen(42);
  const auto g = testsupport::arbitrary(gen, 30, 0.1, true);
  const std::vector<NodeId> seeds{0, 2, 3, 7, 11};
  const auto st = mc_run(g, seeds, 10, 20000, 9);
  const auto exact = VoterDynamics(g).totals(ColorDistribution::indicator(30, seeds), 10);
  CHECK(st.mean[0] == 5.0);
  CHECK(st.std_error[0] == 0.0);
  for (std::size_t t = 1; t <= 10; ++t) CHECK(std::abs(st.mean[t] - exact[t]) < 4.5 * st.std_error[t]);
}

TEST_CASE("per-node frequencies track the exact distribution") {
  testsupport::Rng gen(43);
  const auto g = testsupport::arbitrary(gen, 12, 0.3);
  McOptions opts;
  opts.per_node = true;
  const std::vector<NodeId> seeds{3};
  const auto st = mc_run(g, seeds, 4, 40000, 10, opts);
  const auto traj = propagate(g, ColorDistribution::indicator(12, seeds), 4);
  for (std::size_t i = 0; i < 12; ++i) {
    const double p = traj[4][i];
    const double se = std::sqrt(std::max(p * (1 - p), 1e-6) / 40000);
    CHECK(std::abs(st.node_frequency[4][i] - p) < 5 * se);
  }
}

TEST_CASE("random seed sets match the uniform k/n start in expectation") {
  testsupport::Rng gen(44);
  const auto g = testsupport::arbitrary(gen, 20, 0.2);
  McOptions opts;
  opts.random_seed_count = 5;
  const auto st = mc_run(g, {}, 6, 20000, 11, opts);
  const auto exact = VoterDynamics(g).totals(ColorDistribution::constant(20, 0.25), 6);
  CHECK(st.mean[0] == 5.0);
  for (std::size_t t = 1; t <= 6; ++t) CHECK(std::abs(st.mean[t] - exact[t]) < 4.5 * st.std_error[t]);
}

TEST_CASE("balanced graphs polarize") {
  testsupport::Rng gen(45);
  const auto planted = testsupport::ergodic(gen, 10, Plant::Balanced);
  const auto& g = planted.graph;
  const BalanceClass b = classify_balance(testsupport::oracle::all_nodes(10), g);
  const std::size_t horizon = coalescence_horizon(g, 1e-3);
  McOptions opts;
  opts.polarization = &b;
  const std::vector<NodeId> seeds{0, 1};
  const auto st = mc_run(g, seeds, horizon, 4000, 12, opts);
  CHECK(st.polarized() >= 0.99 * 4000);
  // polarized states are absorbing: the white count is |S| or |S-bar|
  const double s_share = static_cast<double>(st.polarized_s_white) / 4000;
  const double mean_last = st.mean.back();
  CHECK(mean_last == doctest::Approx(s_share * b.s_size() + (1 - s_share) * b.s_bar_size()).epsilon(0.02));
}

TEST_CASE("coalescence horizon") {
  const auto g = from_edge_list(std::vector<SignedEdge>{{0, 0, 1.0}, {1, 0, 1.0}});
  CHECK(coalescence_horizon(g, 1e-9) == 1);
  testsupport::Rng gen(46);
  const auto big = testsupport::arbitrary(gen, 401, 0.01);
  CHECK_THROWS_AS(coalescence_horizon(big, 1e-3), Error);
}

TEST_CASE("argument checks") {
  const auto g = from_edge_list(std::vector<SignedEdge>{{0, 1, 1.0}, {1, 0, 1.0}});
  const std::vector<NodeId> bad{5};
  CHECK_THROWS_AS(mc_run(g, bad, 2, 10, 1), Error);
  CHECK_THROWS_AS(mc_run(g, {}, 2, 0, 1), Error);
  McOptions opts;
  opts.random_seed_count = 3;
  CHECK_THROWS_AS(mc_run(g, {}, 2, 10, 1, opts), Error);
}
