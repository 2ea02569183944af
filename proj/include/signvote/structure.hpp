#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "signvote/graph.hpp"

namespace signvote {

/// Condensation of a graph into strongly connected components.
///
/// Components are numbered by their smallest node id. Sinks are the
/// components with no edge leaving them; every other node is in the
/// non-sink set X. `x_index` / `sink_index` give each node's position inside
/// X or inside its sink, which is how the P_X, P_Y and P_Z blocks are
/// addressed without copying the graph.
struct Decomposition {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<std::size_t> scc_id;                 // per node
  std::vector<std::vector<NodeId>> components;     // sorted node lists, by scc id
  std::vector<std::size_t> sink_components;        // scc ids of the sinks, ascending
  std::vector<NodeId> non_sink;                    // X, ascending

  std::vector<std::size_t> sink_of;                // per node: index into sinks(), or npos
  std::vector<std::size_t> local_index;            // per node: position in X or in its sink

  std::size_t sink_count() const noexcept { return sink_components.size(); }
  std::span<const NodeId> sink_nodes(std::size_t sink) const { return components[sink_components[sink]]; }
  bool in_non_sink(NodeId v) const { return sink_of[v] == npos; }
};

Decomposition decompose(const SignedDigraph& graph);

/// True when the gcd of all cycle lengths inside `component` is 1.
/// Throws NotStronglyConnected if the node set is not one SCC of `graph`.
bool is_aperiodic(std::span<const NodeId> component, const SignedDigraph& graph);

/// Period of a strongly connected node set (0 if it has no cycle at all).
std::size_t period(std::span<const NodeId> component, const SignedDigraph& graph);

enum class BalanceKind { Balanced, AntiBalanced, StrictlyUnbalanced };

const char* to_string(BalanceKind kind) noexcept;

/// Balance classification of one component. `nodes` is sorted ascending and
/// `in_s[k]` says whether nodes[k] lies in S. The smallest node is always in
/// S. `in_s` is empty for strictly unbalanced components.
struct BalanceClass {
  BalanceKind kind = BalanceKind::StrictlyUnbalanced;
  std::vector<NodeId> nodes;
  std::vector<bool> in_s;

  std::size_t s_size() const noexcept;
  std::size_t s_bar_size() const noexcept { return in_s.empty() ? 0 : nodes.size() - s_size(); }
  /// +1 for S, -1 for S-bar (the signed indicator 1-hat_S), per position.
  double sign_at(std::size_t k) const { return in_s[k] ? 1.0 : -1.0; }
};

/// Two-colors the undirected sign skeleton of `component`: a positive edge
/// keeps the color, a negative edge flips it (the roles swap when
/// `negated`). Returns the S membership aligned with the sorted node list,
/// or nothing when the coloring is inconsistent.
std::optional<std::vector<bool>> try_partition(std::span<const NodeId> component, const SignedDigraph& graph,
                                               bool negated);

BalanceClass classify_balance(std::span<const NodeId> component, const SignedDigraph& graph);

struct SolveOptions {
  enum class Method { Auto, Iterative, Direct };
  Method method = Method::Auto;
  double tolerance = 1e-12;            // per-entry change between iterations
  std::size_t max_iterations = 0;      // 0: derived from the system size
  std::size_t direct_limit = 2000;     // largest system solved densely
};

/// Stationary distribution of the unsigned walk restricted to an ergodic
/// component, aligned with the sorted node list. Power iteration first;
/// dense solve when the iteration cap is hit and the component is small.
std::vector<double> stationary(std::span<const NodeId> component, const SignedDigraph& graph,
                               const SolveOptions& options = {});

/// max_i |(pi^T Pbar)_i - pi_i| over the component.
double stationary_residual(std::span<const NodeId> component, const SignedDigraph& graph,
                           std::span<const double> pi);

}  // namespace signvote
