#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "signvote/dynamics.hpp"
#include "signvote/graph.hpp"

namespace signvote {

enum class Objective { Instant, Average, LongTerm, Oscillation };

const char* to_string(Objective objective) noexcept;
/// Accepts "instant", "average", "longterm" and "oscillation".
std::optional<Objective> parse_objective(std::string_view name) noexcept;

/// Per-node marginal influence. `t` is meaningful for Instant and Average.
struct ContributionVector {
  std::vector<double> c;
  Objective kind = Objective::Instant;
  std::size_t t = 0;

  /// Number of strictly positive entries.
  std::size_t positive_count() const noexcept;
  double value_of(std::span<const NodeId> nodes) const;
};

/// Nodes are listed in selection order: contribution descending, then id
/// ascending.
struct SeedSet {
  std::vector<NodeId> nodes;
  double value = 0.0;
  Objective objective = Objective::Instant;
};

/// c_t^T = 1^T P^t.
ContributionVector contribution_instant(const SignedDigraph& graph, std::size_t t);

/// (c_0 + ... + c_t) / (t + 1) with c_0 = 1.
ContributionVector contribution_average(const SignedDigraph& graph, std::size_t t);

/// Cesaro-limit contribution. Nonzero only on balanced sinks, where it is
/// (1^T u_b + |S| - |S-bar|) * pi-hat.
ContributionVector contribution_longterm(const SinkAnalysis& analysis);
ContributionVector contribution_longterm(const SignedDigraph& graph);

/// Top min(k, n+) nodes with positive contribution.
SeedSet select_top(const ContributionVector& c, std::size_t k);

enum class ShortTermMode { Instant, Average };

SeedSet svim_s(const SignedDigraph& graph, std::size_t t, std::size_t k, ShortTermMode mode);
SeedSet svim_l(const SignedDigraph& graph, std::size_t k);
SeedSet svim_l(const SinkAnalysis& analysis, std::size_t k);

/// Seeds maximising |1^T x_o - 1^T x_e| / 2. Needs exactly one
/// anti-balanced sink. `value` is the resulting amplitude.
SeedSet oscillation_seeds(const SignedDigraph& graph, std::size_t k);
SeedSet oscillation_seeds(const SinkAnalysis& analysis, std::size_t k);

enum class Heuristic { OutDegree, PositiveOutDegree, DegreeDifference, Random };

const char* to_string(Heuristic heuristic) noexcept;
/// Accepts "out_degree", "positive_out_degree", "degree_difference", "random".
std::optional<Heuristic> parse_heuristic(std::string_view name) noexcept;

/// Exactly min(k, n) nodes by weighted score d+ + d-, d+ or d+ - d- (ties by
/// id), or a uniform random subset for Random. When `valued_by` is given the
/// set's value is its total contribution under that vector.
SeedSet heuristic_seeds(const SignedDigraph& graph, std::size_t k, Heuristic heuristic, std::uint64_t rng_seed = 0,
                        const ContributionVector* valued_by = nullptr);

/// Exhaustive search over all seed sets of size <= k (n <= 20), each scored
/// by exact propagation: f_t(e_W) - f_t(0), its running average, the
/// trailing two-step Cesaro average at the convergence horizon, or the
/// oscillation amplitude at that horizon. Ties keep the lexicographically
/// first set.
SeedSet brute_force_opt(const SignedDigraph& graph, Objective objective, std::size_t k, std::size_t t = 0);

}  // namespace signvote
