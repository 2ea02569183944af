#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signvote/dynamics.hpp"
#include "signvote/maximize.hpp"
#include "signvote/simulate.hpp"

namespace signvote {

struct CompareOptions {
  Objective objective = Objective::LongTerm;
  std::size_t t = 20;        // steps in the per-step table; also the short-term horizon
  std::size_t k = 10;
  std::size_t trials = 0;    // Monte Carlo trials per method; 0 skips simulation
  std::uint64_t rng_seed = 1;
  unsigned threads = 0;
};

struct MethodResult {
  std::string name;          // "svim" or a heuristic name
  SeedSet seeds;             // for "random", one representative draw
  std::vector<double> exact; // 1^T x_s for s = 0..t
  /// Cesaro-limit white count, when every sink is aperiodic.
  std::optional<double> steady;
  std::optional<double> amplitude;  // oscillating steady states only
  std::optional<SimStats> mc;
};

struct CompareResult {
  CompareOptions options;
  ContributionVector contribution;   // vector the seeds were valued by
  std::vector<MethodResult> methods; // svim first, then the four heuristics
};

/// Runs SVIM for the chosen objective and the four heuristic baselines.
/// The random baseline's exact series is its expectation over uniform
/// k-subsets, i.e. propagation from (k/n) 1; its Monte Carlo series draws
/// a fresh subset per trial.
CompareResult compare(const SignedDigraph& graph, const CompareOptions& options);

}  // namespace signvote
