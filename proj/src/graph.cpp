#include "signvote/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "signvote/error.hpp"

namespace signvote {

std::vector<SignedEdge> SignedDigraph::edge_list() const {
  std::vector<SignedEdge> out;
  out.reserve(edges_.size());
  for (NodeId i = 0; i < node_count(); ++i) {
    for (const OutEdge& e : out_edges(i)) {
      out.push_back({i, e.target, e.sign * e.weight});
    }
  }
  return out;
}

std::size_t SignedDigraph::negative_edge_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const OutEdge& e) { return e.sign < 0; }));
}

ColorDistribution::ColorDistribution(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "color probability at node " + std::to_string(i) + " is outside [0, 1]");
    }
  }
}

ColorDistribution ColorDistribution::constant(std::size_t n, double value) {
  return ColorDistribution(std::vector<double>(n, value));
}

ColorDistribution ColorDistribution::indicator(std::size_t n, std::span<const NodeId> seeds) {
  std::vector<double> x(n, 0.0);
  for (NodeId s : seeds) {
    if (s >= n) {
      throw Error(ErrorKind::InvalidArgument, "seed " + std::to_string(s) + " is not a node");
    }
    x[s] = 1.0;
  }
  return ColorDistribution(std::move(x));
}

double ColorDistribution::total() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

SignedDigraph from_edge_list(std::span<const SignedEdge> edges, const BuildOptions& options) {
  std::size_t n = 0;
  for (const SignedEdge& e : edges) {
    n = std::max<std::size_t>(n, std::max(e.source, e.target) + std::size_t{1});
  }
  if (options.node_count) {
    if (*options.node_count < n) {
      throw Error(ErrorKind::InvalidArgument, "edge references a node beyond the declared node count");
    }
    n = *options.node_count;
  }

  std::vector<std::size_t> degree(n, 0);
  for (const SignedEdge& e : edges) {
    if (e.signed_weight == 0.0 || !std::isfinite(e.signed_weight)) {
      throw Error(ErrorKind::ZeroWeightEdge, "edge " + std::to_string(e.source) + " -> " +
                                                 std::to_string(e.target) + " has weight " +
                                                 std::to_string(e.signed_weight));
    }
    ++degree[e.source];
  }

  std::vector<NodeId> dangling;
  for (NodeId i = 0; i < n; ++i) {
    if (degree[i] == 0) dangling.push_back(i);
  }
  if (!dangling.empty() && !options.repair_dangling) {
    throw Error(ErrorKind::DanglingNode, "node " + std::to_string(dangling.front()) +
                                             " has no outgoing edge (" + std::to_string(dangling.size()) +
                                             " such nodes)");
  }
  for (NodeId i : dangling) degree[i] = 1;

  SignedDigraph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.edges_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const SignedEdge& e : edges) {
    g.edges_[cursor[e.source]++] = {e.target, std::abs(e.signed_weight),
                                     static_cast<std::int8_t>(e.signed_weight > 0 ? 1 : -1)};
  }
  for (NodeId i : dangling) g.edges_[cursor[i]++] = {i, 1.0, 1};

  g.out_weight_.assign(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    auto first = g.edges_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.edges_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::stable_sort(first, last, [](const OutEdge& a, const OutEdge& b) { return a.target < b.target; });
    auto dup = std::adjacent_find(first, last, [](const OutEdge& a, const OutEdge& b) { return a.target == b.target; });
    if (dup != last) {
      throw Error(ErrorKind::DuplicateEdge,
                  "edge " + std::to_string(i) + " -> " + std::to_string(dup->target) + " appears more than once");
    }
    double d = 0.0;
    for (auto it = first; it != last; ++it) d += it->weight;
    g.out_weight_[i] = d;
  }
  return g;
}

std::vector<double> ground_vector(const SignedDigraph& graph) {
  std::vector<double> g(graph.node_count(), 0.0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    double neg = 0.0;
    for (const OutEdge& e : graph.out_edges(i)) {
      if (e.sign < 0) neg += e.weight;
    }
    g[i] = neg / graph.total_out_weight(i);
  }
  return g;
}

void apply_p(const SignedDigraph& graph, std::span<const double> v, std::span<double> out) {
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    double acc = 0.0;
    for (const OutEdge& e : graph.out_edges(i)) acc += e.sign * e.weight * v[e.target];
    out[i] = acc / graph.total_out_weight(i);
  }
}

std::vector<double> apply_p(const SignedDigraph& graph, std::span<const double> v) {
  std::vector<double> out(graph.node_count());
  apply_p(graph, v, out);
  return out;
}

void apply_p_transpose(const SignedDigraph& graph, std::span<const double> v, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    const double scaled = v[i] / graph.total_out_weight(i);
    if (scaled == 0.0) continue;
    for (const OutEdge& e : graph.out_edges(i)) out[e.target] += e.sign * e.weight * scaled;
  }
}

std::vector<double> apply_p_transpose(const SignedDigraph& graph, std::span<const double> v) {
  std::vector<double> out(graph.node_count());
  apply_p_transpose(graph, v, out);
  return out;
}

SignedDigraph negate_signs(const SignedDigraph& graph) {
  SignedDigraph g = graph;
  for (OutEdge& e : g.edges_) e.sign = static_cast<std::int8_t>(-e.sign);
  return g;
}

SignedDegrees signed_out_degrees(const SignedDigraph& graph) {
  SignedDegrees d{std::vector<double>(graph.node_count(), 0.0), std::vector<double>(graph.node_count(), 0.0)};
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    for (const OutEdge& e : graph.out_edges(i)) {
      (e.sign > 0 ? d.positive : d.negative)[i] += e.weight;
    }
  }
  return d;
}

}  // namespace signvote
