#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace signvote {

using NodeId = std::uint32_t;

/// One directed edge as it appears in an input list. The sign of
/// `signed_weight` is the edge sign; its magnitude is the edge weight.
struct SignedEdge {
  NodeId source;
  NodeId target;
  double signed_weight;
};

struct OutEdge {
  NodeId target;
  double weight;  // strictly positive
  std::int8_t sign;  // +1 or -1

  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

struct BuildOptions {
  /// Total node count. When empty it is one past the largest id seen.
  std::optional<std::size_t> node_count;
  /// Give every node without out-edges a positive unit self-loop instead
  /// of failing with DanglingNode.
  bool repair_dangling = false;
};

/// Immutable weighted signed digraph in compressed sparse row form.
///
/// Out-edges of every node are sorted by target id. Every node has at least
/// one out-edge, so the degree matrix D is invertible and the signed
/// transition matrix P = D^-1 A is well defined. P itself is never stored;
/// apply_p / apply_p_transpose evaluate it edge by edge.
class SignedDigraph {
 public:
  SignedDigraph() = default;

  std::size_t node_count() const noexcept { return out_weight_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const OutEdge> out_edges(NodeId node) const noexcept {
    return {edges_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }

  /// d_i = sum_j |A_ij|
  double total_out_weight(NodeId node) const noexcept { return out_weight_[node]; }

  std::span<const double> total_out_weights() const noexcept { return out_weight_; }

  /// Every edge as a (source, target, signed weight) triple in CSR order.
  std::vector<SignedEdge> edge_list() const;

  std::size_t negative_edge_count() const noexcept;

  friend bool operator==(const SignedDigraph&, const SignedDigraph&) = default;

 private:
  friend SignedDigraph from_edge_list(std::span<const SignedEdge>, const BuildOptions&);
  friend SignedDigraph negate_signs(const SignedDigraph&);

  std::vector<std::size_t> offsets_{0};
  std::vector<OutEdge> edges_;
  std::vector<double> out_weight_;
};

/// Per-node probability of being white. Entries stay in [0, 1].
class ColorDistribution {
 public:
  ColorDistribution() = default;
  explicit ColorDistribution(std::vector<double> values);

  static ColorDistribution zeros(std::size_t n) { return ColorDistribution(std::vector<double>(n, 0.0)); }
  static ColorDistribution constant(std::size_t n, double value);
  /// Indicator vector e_W of a seed set.
  static ColorDistribution indicator(std::size_t n, std::span<const NodeId> seeds);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  /// 1^T x, the expected number of white nodes.
  double total() const noexcept;

  friend bool operator==(const ColorDistribution&, const ColorDistribution&) = default;

 private:
  std::vector<double> values_;
};

/// Builds a graph from signed edges. Rejects zero weights, duplicate
/// (source, target) pairs and, unless repair is requested, nodes with no
/// outgoing edge. Self-loops are allowed.
SignedDigraph from_edge_list(std::span<const SignedEdge> edges, const BuildOptions& options = {});

/// g^-(i): weighted fraction of node i's outgoing weight on negative edges.
std::vector<double> ground_vector(const SignedDigraph& graph);

/// out = P v, where (Pv)(i) = sum_j sign_ij * (w_ij / d_i) * v(j).
void apply_p(const SignedDigraph& graph, std::span<const double> v, std::span<double> out);
std::vector<double> apply_p(const SignedDigraph& graph, std::span<const double> v);

/// out = P^T v.
void apply_p_transpose(const SignedDigraph& graph, std::span<const double> v, std::span<double> out);
std::vector<double> apply_p_transpose(const SignedDigraph& graph, std::span<const double> v);

/// Same topology and weights with every sign flipped.
SignedDigraph negate_signs(const SignedDigraph& graph);

/// Weighted out-degree split by sign: d^+ and d^-.
struct SignedDegrees {
  std::vector<double> positive;
  std::vector<double> negative;
};
SignedDegrees signed_out_degrees(const SignedDigraph& graph);

}  // namespace signvote
