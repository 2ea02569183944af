#include "signvote/structure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <string>

#include "signvote/error.hpp"

namespace signvote {
namespace {

constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

/// Sorted copy of a node set with O(log n) position lookup.
class LocalNodes {
 public:
  explicit LocalNodes(std::span<const NodeId> nodes) : nodes_(nodes.begin(), nodes.end()) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  }
  std::size_t size() const { return nodes_.size(); }
  NodeId operator[](std::size_t k) const { return nodes_[k]; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t find(NodeId v) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
    return (it != nodes_.end() && *it == v) ? static_cast<std::size_t>(it - nodes_.begin()) : kAbsent;
  }

 private:
  std::vector<NodeId> nodes_;
};

struct LocalEdge {
  std::size_t to;
  std::int8_t sign;
};

/// Edges of the subgraph induced by `local`, as local adjacency lists.
std::vector<std::vector<LocalEdge>> induced_out(const LocalNodes& local, const SignedDigraph& graph) {
  std::vector<std::vector<LocalEdge>> adj(local.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    for (const OutEdge& e : graph.out_edges(local[k])) {
      const std::size_t t = local.find(e.target);
      if (t != kAbsent) adj[k].push_back({t, e.sign});
    }
  }
  return adj;
}

std::vector<std::size_t> bfs_levels(const std::vector<std::vector<LocalEdge>>& adj) {
  std::vector<std::size_t> level(adj.size(), kAbsent);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (const LocalEdge& e : adj[u]) {
      if (level[e.to] == kAbsent) {
        level[e.to] = level[u] + 1;
        q.push(e.to);
      }
    }
  }
  return level;
}

void require_strongly_connected(const LocalNodes& local, const std::vector<std::vector<LocalEdge>>& adj) {
  if (local.size() == 0) throw Error(ErrorKind::NotStronglyConnected, "empty node set");
  auto fwd = bfs_levels(adj);
  std::vector<std::vector<LocalEdge>> rev(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const LocalEdge& e : adj[u]) rev[e.to].push_back({u, e.sign});
  }
  auto bwd = bfs_levels(rev);
  for (std::size_t k = 0; k < local.size(); ++k) {
    if (fwd[k] == kAbsent || bwd[k] == kAbsent) {
      throw Error(ErrorKind::NotStronglyConnected,
                  "node " + std::to_string(local[k]) + " is not mutually reachable with node " +
                      std::to_string(local[0]));
    }
  }
}

std::size_t default_cap(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return std::max<std::size_t>(1000, static_cast<std::size_t>(10.0 * nn * std::log(nn)));
}

}  // namespace

const char* to_string(BalanceKind kind) noexcept {
  switch (kind) {
    case BalanceKind::Balanced: return "Balanced";
    case BalanceKind::AntiBalanced: return "AntiBalanced";
    case BalanceKind::StrictlyUnbalanced: return "StrictlyUnbalanced";
  }
  return "Unknown";
}

std::size_t BalanceClass::s_size() const noexcept {
  return static_cast<std::size_t>(std::count(in_s.begin(), in_s.end(), true));
}

Decomposition decompose(const SignedDigraph& graph) {
  const std::size_t n = graph.node_count();
  // Iterative Tarjan.
  std::vector<std::size_t> index(n, kAbsent), low(n, 0), raw_id(n, kAbsent);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;  // (node, next edge offset)
  std::size_t counter = 0, raw_count = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kAbsent) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      auto edges = graph.out_edges(v);
      if (next < edges.size()) {
        const NodeId w = edges[next++].target;
        if (index[w] == kAbsent) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const NodeId done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_id[w] = raw_count;
        } while (w != done);
        ++raw_count;
      }
    }
  }

  // Renumber components by their smallest node id.
  std::vector<NodeId> min_node(raw_count, static_cast<NodeId>(n));
  for (NodeId v = 0; v < n; ++v) min_node[raw_id[v]] = std::min(min_node[raw_id[v]], v);
  std::vector<std::size_t> order(raw_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return min_node[a] < min_node[b]; });
  std::vector<std::size_t> rank(raw_count);
  for (std::size_t r = 0; r < raw_count; ++r) rank[order[r]] = r;

  Decomposition d;
  d.scc_id.resize(n);
  d.components.resize(raw_count);
  for (NodeId v = 0; v < n; ++v) {
    d.scc_id[v] = rank[raw_id[v]];
    d.components[d.scc_id[v]].push_back(v);
  }

  std::vector<bool> has_exit(raw_count, false);
  for (NodeId v = 0; v < n; ++v) {
    for (const OutEdge& e : graph.out_edges(v)) {
      if (d.scc_id[e.target] != d.scc_id[v]) has_exit[d.scc_id[v]] = true;
    }
  }

  d.sink_of.assign(n, Decomposition::npos);
  d.local_index.assign(n, 0);
  for (std::size_t c = 0; c < raw_count; ++c) {
    if (has_exit[c]) continue;
    const std::size_t sink = d.sink_components.size();
    d.sink_components.push_back(c);
    const auto& nodes = d.components[c];
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      d.sink_of[nodes[k]] = sink;
      d.local_index[nodes[k]] = k;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (d.sink_of[v] == Decomposition::npos) {
      d.local_index[v] = d.non_sink.size();
      d.non_sink.push_back(v);
    }
  }
  return d;
}

std::size_t period(std::span<const NodeId> component, const SignedDigraph& graph) {
  LocalNodes local(component);
  auto adj = induced_out(local, graph);
  require_strongly_connected(local, adj);
  auto level = bfs_levels(adj);
  std::size_t g = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const LocalEdge& e : adj[u]) {
      const long long diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[e.to]);
      g = std::gcd(g, static_cast<std::size_t>(std::llabs(diff)));
    }
  }
  return g;
}

bool is_aperiodic(std::span<const NodeId> component, const SignedDigraph& graph) {
  return period(component, graph) == 1;
}

std::optional<std::vector<bool>> try_partition(std::span<const NodeId> component, const SignedDigraph& graph,
                                               bool negated) {
  LocalNodes local(component);
  const std::size_t m = local.size();
  std::vector<std::vector<std::pair<std::size_t, bool>>> undirected(m);  // (neighbour, flips color)
  for (std::size_t k = 0; k < m; ++k) {
    for (const OutEdge& e : graph.out_edges(local[k])) {
      const std::size_t t = local.find(e.target);
      if (t == kAbsent) continue;
      const bool flip = (e.sign < 0) != negated;
      undirected[k].push_back({t, flip});
      undirected[t].push_back({k, flip});
    }
  }

  enum : std::int8_t { kUnset = -1 };
  std::vector<std::int8_t> color(m, kUnset);
  std::queue<std::size_t> q;
  for (std::size_t root = 0; root < m; ++root) {
    if (color[root] != kUnset) continue;
    color[root] = 1;
    q.push(root);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (auto [v, flip] : undirected[u]) {
        const std::int8_t want = static_cast<std::int8_t>(flip ? 1 - color[u] : color[u]);
        if (color[v] == kUnset) {
          color[v] = want;
          q.push(v);
        } else if (color[v] != want) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<bool> in_s(m);
  for (std::size_t k = 0; k < m; ++k) in_s[k] = color[k] == 1;
  return in_s;
}

BalanceClass classify_balance(std::span<const NodeId> component, const SignedDigraph& graph) {
  LocalNodes local(component);
  require_strongly_connected(local, induced_out(local, graph));

  BalanceClass out;
  out.nodes = local.nodes();
  if (auto p = try_partition(out.nodes, graph, false)) {
    out.kind = BalanceKind::Balanced;
    out.in_s = std::move(*p);
  } else if (auto q = try_partition(out.nodes, graph, true)) {
    out.kind = BalanceKind::AntiBalanced;
    out.in_s = std::move(*q);
  } else {
    out.kind = BalanceKind::StrictlyUnbalanced;
  }
  return out;
}

double stationary_residual(std::span<const NodeId> component, const SignedDigraph& graph,
                           std::span<const double> pi) {
  LocalNodes local(component);
  std::vector<double> next(local.size(), 0.0);
  for (std::size_t k = 0; k < local.size(); ++k) {
    double inside = 0.0;
    for (const OutEdge& e : graph.out_edges(local[k])) {
      if (local.find(e.target) != kAbsent) inside += e.weight;
    }
    for (const OutEdge& e : graph.out_edges(local[k])) {
      const std::size_t t = local.find(e.target);
      if (t != kAbsent) next[t] += pi[k] * e.weight / inside;
    }
  }
  double r = 0.0;
  for (std::size_t k = 0; k < local.size(); ++k) r = std::max(r, std::abs(next[k] - pi[k]));
  return r;
}

std::vector<double> stationary(std::span<const NodeId> component, const SignedDigraph& graph,
                               const SolveOptions& options) {
  LocalNodes local(component);
  const std::size_t m = local.size();
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "empty component");

  // Unsigned transition probabilities restricted to the component. Weight on
  // edges leaving the set is dropped and rows renormalised; for a sink
  // component nothing leaves, so this is exactly Pbar_Z.
  struct Entry {
    std::size_t to;
    double p;
  };
  std::vector<std::vector<Entry>> rows(m);
  for (std::size_t k = 0; k < m; ++k) {
    double inside = 0.0;
    for (const OutEdge& e : graph.out_edges(local[k])) {
      const std::size_t t = local.find(e.target);
      if (t != kAbsent) {
        rows[k].push_back({t, e.weight});
        inside += e.weight;
      }
    }
    if (inside == 0.0) throw Error(ErrorKind::NotStronglyConnected, "component node without internal out-edge");
    for (Entry& en : rows[k]) en.p /= inside;
  }

  auto residual_of = [&](const std::vector<double>& pi) {
    std::vector<double> next(m, 0.0);
    for (std::size_t k = 0; k < m; ++k)
      for (const Entry& en : rows[k]) next[en.to] += pi[k] * en.p;
    double r = 0.0;
    for (std::size_t k = 0; k < m; ++k) r = std::max(r, std::abs(next[k] - pi[k]));
    return r;
  };

  using Method = SolveOptions::Method;
  std::vector<double> pi(m, 1.0 / static_cast<double>(m));
  bool converged = false;
  if (options.method != Method::Direct) {
    const std::size_t cap = options.max_iterations ? options.max_iterations : default_cap(m);
    std::vector<double> next(m);
    for (std::size_t it = 0; it < cap; ++it) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t k = 0; k < m; ++k)
        for (const Entry& en : rows[k]) next[en.to] += pi[k] * en.p;
      double change = 0.0;
      for (std::size_t k = 0; k < m; ++k) change = std::max(change, std::abs(next[k] - pi[k]));
      pi.swap(next);
      if (change <= options.tolerance) {
        converged = true;
        break;
      }
    }
    const double sum = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& p : pi) p /= sum;
  }

  const bool try_direct = options.method == Method::Direct ||
                          (options.method == Method::Auto && !converged && m <= options.direct_limit);
  if (try_direct) {
    // (Pbar^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k)
      for (const Entry& en : rows[k]) a(static_cast<Eigen::Index>(en.to), static_cast<Eigen::Index>(k)) += en.p;
    a.row(static_cast<Eigen::Index>(m - 1)).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    b(static_cast<Eigen::Index>(m - 1)) = 1.0;
    Eigen::VectorXd sol = a.partialPivLu().solve(b);
    for (std::size_t k = 0; k < m; ++k) pi[k] = std::max(0.0, sol(static_cast<Eigen::Index>(k)));
    const double sum = std::accumulate(pi.begin(), pi.end(), 0.0);
    for (double& p : pi) p /= sum;
  }

  const double residual = residual_of(pi);
  if (!(residual <= 1e-10)) {
    throw Error(ErrorKind::NoConvergence,
                "stationary distribution residual " + std::to_string(residual) + " on a component of " +
                    std::to_string(m) + " nodes");
  }
  return pi;
}

}  // namespace signvote
