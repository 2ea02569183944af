#include "signvote/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "signvote/error.hpp"
#include "signvote/simulate.hpp"

namespace signvote {
namespace {

// (score descending, id ascending), first `limit` entries.
std::vector<NodeId> rank_by(std::span<const double> score, std::vector<NodeId> pool, std::size_t limit) {
  limit = std::min(limit, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(limit), pool.end(),
                    [&](NodeId a, NodeId b) { return score[a] != score[b] ? score[a] > score[b] : a < b; });
  pool.resize(limit);
  return pool;
}

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

}  // namespace

const char* to_string(Objective objective) noexcept {
  switch (objective) {
    case Objective::Instant: return "instant";
    case Objective::Average: return "average";
    case Objective::LongTerm: return "longterm";
    case Objective::Oscillation: return "oscillation";
  }
  return "unknown";
}

std::optional<Objective> parse_objective(std::string_view name) noexcept {
  for (Objective o : {Objective::Instant, Objective::Average, Objective::LongTerm, Objective::Oscillation})
    if (name == to_string(o)) return o;
  return std::nullopt;
}

std::size_t ContributionVector::positive_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](double v) { return v > 0.0; }));
}

double ContributionVector::value_of(std::span<const NodeId> nodes) const {
  double s = 0.0;
  for (NodeId v : nodes) s += c.at(v);
  return s;
}

ContributionVector contribution_instant(const SignedDigraph& graph, std::size_t t) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "instant contribution needs t >= 1");
  std::vector<double> c(graph.node_count(), 1.0), next(graph.node_count());
  for (std::size_t k = 0; k < t; ++k) {
    apply_p_transpose(graph, c, next);
    c.swap(next);
  }
  return {std::move(c), Objective::Instant, t};
}

ContributionVector contribution_average(const SignedDigraph& graph, std::size_t t) {
  if (t == 0) throw Error(ErrorKind::InvalidArgument, "average contribution needs t >= 1");
  const std::size_t n = graph.node_count();
  std::vector<double> c(n, 1.0), next(n), sum(n, 1.0);
  for (std::size_t k = 0; k < t; ++k) {
    apply_p_transpose(graph, c, next);
    c.swap(next);
    for (std::size_t i = 0; i < n; ++i) sum[i] += c[i];
  }
  for (double& v : sum) v /= static_cast<double>(t + 1);
  return {std::move(sum), Objective::Average, t};
}

ContributionVector contribution_longterm(const SinkAnalysis& analysis) {
  std::vector<double> c(analysis.decomposition.scc_id.size(), 0.0);
  for (const SinkInfo& info : analysis.sinks) {
    if (info.balance.kind != BalanceKind::Balanced) continue;
    double scale = static_cast<double>(info.balance.s_size()) - static_cast<double>(info.balance.s_bar_size());
    for (double u : info.coupling) scale += u;
    for (std::size_t k = 0; k < info.balance.nodes.size(); ++k) c[info.balance.nodes[k]] = scale * info.signed_pi(k);
  }
  return {std::move(c), Objective::LongTerm, 0};
}

ContributionVector contribution_longterm(const SignedDigraph& graph) {
  return contribution_longterm(analyze_sinks(graph));
}

SeedSet select_top(const ContributionVector& c, std::size_t k) {
  std::vector<NodeId> positive;
  for (NodeId v = 0; v < c.c.size(); ++v)
    if (c.c[v] > 0.0) positive.push_back(v);
  SeedSet out;
  out.objective = c.kind;
  out.nodes = rank_by(c.c, std::move(positive), k);
  out.value = c.value_of(out.nodes);
  return out;
}

SeedSet svim_s(const SignedDigraph& graph, std::size_t t, std::size_t k, ShortTermMode mode) {
  return select_top(mode == ShortTermMode::Instant ? contribution_instant(graph, t) : contribution_average(graph, t),
                    k);
}

SeedSet svim_l(const SinkAnalysis& analysis, std::size_t k) { return select_top(contribution_longterm(analysis), k); }

SeedSet svim_l(const SignedDigraph& graph, std::size_t k) { return svim_l(analyze_sinks(graph), k); }

SeedSet oscillation_seeds(const SinkAnalysis& analysis, std::size_t k) {
  const SinkInfo* anti = nullptr;
  for (const SinkInfo& info : analysis.sinks) {
    if (info.balance.kind != BalanceKind::AntiBalanced) continue;
    if (anti) throw Error(ErrorKind::WrongKind, "oscillation seeding needs exactly one anti-balanced sink, found several");
    anti = &info;
  }
  if (!anti) throw Error(ErrorKind::WrongKind, "oscillation seeding needs an anti-balanced sink");

  const auto& nodes = anti->balance.nodes;
  std::vector<double> pi(analysis.decomposition.scc_id.size(), 0.0);
  std::vector<NodeId> side_s, side_sbar;
  for (std::size_t k2 = 0; k2 < nodes.size(); ++k2) {
    pi[nodes[k2]] = anti->pi[k2];
    (anti->balance.in_s[k2] ? side_s : side_sbar).push_back(nodes[k2]);
  }
  // drive s = pi-hat^T (e_W - 1/2); amplitude = |s| * | |S| - |S-bar| - 1^T u_u |
  double base = 0.0;
  for (std::size_t k2 = 0; k2 < nodes.size(); ++k2) base -= 0.5 * anti->signed_pi(k2);
  double gain = static_cast<double>(anti->balance.s_size()) - static_cast<double>(anti->balance.s_bar_size());
  for (double u : anti->coupling) gain -= u;

  auto w1 = rank_by(pi, side_s, k);
  auto w2 = rank_by(pi, side_sbar, k);
  double d1 = base, d2 = base;
  for (NodeId v : w1) d1 += pi[v];
  for (NodeId v : w2) d2 -= pi[v];

  SeedSet out;
  out.objective = Objective::Oscillation;
  const bool first = std::abs(d1) >= std::abs(d2);
  out.nodes = first ? std::move(w1) : std::move(w2);
  out.value = std::abs(first ? d1 : d2) * std::abs(gain);
  return out;
}

SeedSet oscillation_seeds(const SignedDigraph& graph, std::size_t k) {
  return oscillation_seeds(analyze_sinks(graph), k);
}

const char* to_string(Heuristic heuristic) noexcept {
  switch (heuristic) {
    case Heuristic::OutDegree: return "out_degree";
    case Heuristic::PositiveOutDegree: return "positive_out_degree";
    case Heuristic::DegreeDifference: return "degree_difference";
    case Heuristic::Random: return "random";
  }
  return "unknown";
}

std::optional<Heuristic> parse_heuristic(std::string_view name) noexcept {
  for (Heuristic h : {Heuristic::OutDegree, Heuristic::PositiveOutDegree, Heuristic::DegreeDifference, Heuristic::Random})
    if (name == to_string(h)) return h;
  return std::nullopt;
}

SeedSet heuristic_seeds(const SignedDigraph& graph, std::size_t k, Heuristic heuristic, std::uint64_t rng_seed,
                        const ContributionVector* valued_by) {
  const std::size_t n = graph.node_count();
  SeedSet out;
  out.objective = valued_by ? valued_by->kind : Objective::Instant;
  if (heuristic == Heuristic::Random) {
    auto pool = all_nodes(n);
    Rng rng(trial_seed(rng_seed, 0));
    const std::size_t m = std::min(k, n);
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(m);
    out.nodes = std::move(pool);
  } else {
    const SignedDegrees deg = signed_out_degrees(graph);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (heuristic) {
        case Heuristic::OutDegree: score[i] = deg.positive[i] + deg.negative[i]; break;
        case Heuristic::PositiveOutDegree: score[i] = deg.positive[i]; break;
        default: score[i] = deg.positive[i] - deg.negative[i]; break;
      }
    }
    out.nodes = rank_by(score, all_nodes(n), k);
  }
  if (valued_by) out.value = valued_by->value_of(out.nodes);
  return out;
}

SeedSet brute_force_opt(const SignedDigraph& graph, Objective objective, std::size_t k, std::size_t t) {
  const std::size_t n = graph.node_count();
  if (n > 20) throw Error(ErrorKind::TooLarge, "brute force is limited to 20 nodes, got " + std::to_string(n));
  if ((objective == Objective::Instant || objective == Objective::Average) && t == 0) {
    throw Error(ErrorKind::InvalidArgument, "short-term brute force needs t >= 1");
  }
  const VoterDynamics dyn(graph);

  auto score = [&](const std::vector<NodeId>& w) {
    const ColorDistribution x0 = ColorDistribution::indicator(n, w);
    switch (objective) {
      case Objective::Instant: return dyn.totals(x0, t).back();
      case Objective::Average: {
        const auto tot = dyn.totals(x0, t);
        return std::accumulate(tot.begin(), tot.end(), 0.0) / static_cast<double>(t + 1);
      }
      case Objective::LongTerm: return run_to_horizon(dyn, x0).average_total();
      case Objective::Oscillation: {
        const Horizon h = run_to_horizon(dyn, x0);
        return std::abs(h.last.total() - h.previous.total()) / 2.0;
      }
    }
    return 0.0;
  };

  const double ground = objective == Objective::Oscillation ? 0.0 : score({});
  SeedSet best;
  best.objective = objective;
  best.value = score({}) - ground;

  // Lexicographic enumeration of combinations of each size.
  std::vector<NodeId> w;
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    w.resize(size);
    std::iota(w.begin(), w.end(), NodeId{0});
    while (true) {
      const double v = score(w) - ground;
      if (v > best.value) {
        best.value = v;
        best.nodes = w;
      }
      std::size_t i = size;
      while (i > 0 && w[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++w[i - 1];
      for (std::size_t j = i; j < size; ++j) w[j] = w[j - 1] + 1;
    }
  }
  return best;
}

}  // namespace signvote
