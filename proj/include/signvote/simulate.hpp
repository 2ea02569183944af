#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "signvote/graph.hpp"
#include "signvote/structure.hpp"

namespace signvote {

using Rng = std::mt19937_64;

/// Seed for trial `trial` of a run seeded with `run_seed`. Streams depend
/// only on (run_seed, trial), never on which worker executes the trial.
std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial) noexcept;

/// Walker alias tables over every node's out-edges, weighted by |A_ij|.
/// Built once per graph; each draw costs one 64-bit random number.
class NeighborSampler {
 public:
  explicit NeighborSampler(const SignedDigraph& graph);

  /// Index into graph.out_edges(node) drawn with probability w_ij / d_i.
  std::size_t sample(NodeId node, Rng& rng) const;

  std::size_t degree(NodeId node) const noexcept { return offsets_[node + 1] - offsets_[node]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> threshold_;
  std::vector<std::uint32_t> alias_;
};

using Colors = std::vector<std::uint8_t>;  // 1 = white, 0 = black

/// One synchronous update: every node samples an out-neighbour and copies its
/// pre-update color across a positive edge, or the opposite color across a
/// negative one.
void mc_step(const SignedDigraph& graph, const NeighborSampler& sampler, std::span<const std::uint8_t> colors,
             std::span<std::uint8_t> out, Rng& rng);
Colors mc_step(const SignedDigraph& graph, const Colors& colors, Rng& rng);

struct McOptions {
  /// Record per-step, per-node white frequencies.
  bool per_node = false;
  /// Count trials whose final state is one of the two polarized states of
  /// this partition. Only balanced partitions are tracked.
  const BalanceClass* polarization = nullptr;
  /// Each trial draws its own uniform random seed set of this size instead of
  /// using the fixed seeds.
  std::optional<std::size_t> random_seed_count;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SimStats {
  std::size_t trials = 0;
  std::uint64_t rng_seed = 0;
  std::vector<double> mean;        // per step: mean white count
  std::vector<double> std_error;   // per step: standard error of that mean
  std::vector<std::vector<double>> node_frequency;  // [step][node], when requested
  std::size_t polarized_s_white = 0;
  std::size_t polarized_s_black = 0;

  std::size_t polarized() const noexcept { return polarized_s_white + polarized_s_black; }
};

/// Runs `trials` independent trajectories of `t` synchronous steps from
/// "seeds white, everyone else black". Results are identical for a given
/// rng_seed regardless of thread count.
SimStats mc_run(const SignedDigraph& graph, std::span<const NodeId> seeds, std::size_t t, std::size_t trials,
                std::uint64_t rng_seed, const McOptions& options = {});

/// Smallest T for which the union bound sum_{i<j} Pr[walks from i and j have
/// not met within T steps] is at most `tolerance`. Two backward walks that
/// meet coalesce in the synchronous model, so on a balanced ergodic graph
/// this bounds the probability that a trial is not yet polarized at T.
std::size_t coalescence_horizon(const SignedDigraph& graph, double tolerance, std::size_t max_steps = 1'000'000);

}  // namespace signvote
