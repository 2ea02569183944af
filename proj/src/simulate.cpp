#include "signvote/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "signvote/error.hpp"

namespace signvote {
namespace {

// splitmix64 finaliser
std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Partial {
  std::vector<std::uint64_t> sum;
  std::vector<std::uint64_t> sum_sq;
  std::vector<std::uint64_t> node_white;  // [step * n + node]
  std::size_t s_white = 0;
  std::size_t s_black = 0;
};

enum class Polar { None, SWhite, SBlack };

Polar polar_state(const BalanceClass& p, std::span<const std::uint8_t> colors) {
  bool s_white = true, s_black = true;
  for (std::size_t k = 0; k < p.nodes.size() && (s_white || s_black); ++k) {
    const bool white = colors[p.nodes[k]] != 0;
    if (white != p.in_s[k]) s_white = false;
    if (white == p.in_s[k]) s_black = false;
  }
  return s_white ? Polar::SWhite : s_black ? Polar::SBlack : Polar::None;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t run_seed, std::uint64_t trial) noexcept {
  return mix64(mix64(run_seed + 0x9e3779b97f4a7c15ULL) ^ (trial * 0xd1b54a32d192ed03ULL + 1));
}

NeighborSampler::NeighborSampler(const SignedDigraph& graph) {
  const std::size_t n = graph.node_count();
  offsets_.assign(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + graph.out_edges(v).size();
  threshold_.assign(offsets_[n], 1.0);
  alias_.assign(offsets_[n], 0);

  std::vector<double> scaled;
  std::vector<std::uint32_t> small, large;
  for (NodeId v = 0; v < n; ++v) {
    auto edges = graph.out_edges(v);
    const std::size_t deg = edges.size();
    const std::size_t base = offsets_[v];
    scaled.assign(deg, 0.0);
    small.clear();
    large.clear();
    for (std::size_t k = 0; k < deg; ++k) {
      scaled[k] = edges[k].weight * static_cast<double>(deg) / graph.total_out_weight(v);
      alias_[base + k] = static_cast<std::uint32_t>(k);
      (scaled[k] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(k));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t l = large.back();
      threshold_[base + s] = scaled[s];
      alias_[base + s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // leftovers are 1 up to rounding
    for (std::uint32_t k : small) threshold_[base + k] = 1.0;
    for (std::uint32_t k : large) threshold_[base + k] = 1.0;
  }
}

std::size_t NeighborSampler::sample(NodeId node, Rng& rng) const {
  const std::size_t base = offsets_[node];
  const std::uint64_t deg = offsets_[node + 1] - base;
  if (deg == 1) return 0;
  const std::uint64_t r = rng();
  const std::size_t column = static_cast<std::size_t>(((r >> 32) * deg) >> 32);
  const double u = static_cast<double>(r & 0xffffffffULL) * 0x1p-32;
  return u < threshold_[base + column] ? column : alias_[base + column];
}

void mc_step(const SignedDigraph& graph, const NeighborSampler& sampler, std::span<const std::uint8_t> colors,
             std::span<std::uint8_t> out, Rng& rng) {
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const OutEdge& e = graph.out_edges(v)[sampler.sample(v, rng)];
    const std::uint8_t c = colors[e.target];
    out[v] = e.sign > 0 ? c : static_cast<std::uint8_t>(1 - c);
  }
}

Colors mc_step(const SignedDigraph& graph, const Colors& colors, Rng& rng) {
  NeighborSampler sampler(graph);
  Colors out(colors.size());
  mc_step(graph, sampler, colors, out, rng);
  return out;
}

SimStats mc_run(const SignedDigraph& graph, std::span<const NodeId> seeds, std::size_t t, std::size_t trials,
                std::uint64_t rng_seed, const McOptions& options) {
  const std::size_t n = graph.node_count();
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(trials) > 9.0e18) {
    throw Error(ErrorKind::TooLarge, "white-count moments would overflow");
  }
  for (NodeId s : seeds) {
    if (s >= n) throw Error(ErrorKind::InvalidArgument, "seed " + std::to_string(s) + " is not a node");
  }
  if (options.random_seed_count && *options.random_seed_count > n) {
    throw Error(ErrorKind::InvalidArgument, "random seed count exceeds node count");
  }
  const BalanceClass* polar =
      options.polarization && options.polarization->kind == BalanceKind::Balanced ? options.polarization : nullptr;
  const bool absorbing = polar != nullptr && polar->nodes.size() == n;

  const NeighborSampler sampler(graph);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(options.threads ? options.threads : hw, trials));

  std::vector<Partial> partials(workers);
  auto work = [&](unsigned w) {
    Partial& acc = partials[w];
    acc.sum.assign(t + 1, 0);
    acc.sum_sq.assign(t + 1, 0);
    if (options.per_node) acc.node_white.assign((t + 1) * n, 0);
    Colors cur(n), next(n);
    std::vector<NodeId> pool;
    if (options.random_seed_count) {
      pool.resize(n);
    }
    for (std::size_t trial = w; trial < trials; trial += workers) {
      Rng rng(trial_seed(rng_seed, trial));
      std::fill(cur.begin(), cur.end(), std::uint8_t{0});
      if (options.random_seed_count) {
        std::iota(pool.begin(), pool.end(), NodeId{0});
        for (std::size_t k = 0; k < *options.random_seed_count; ++k) {
          std::uniform_int_distribution<std::size_t> pick(k, n - 1);
          std::swap(pool[k], pool[pick(rng)]);
          cur[pool[k]] = 1;
        }
      } else {
        for (NodeId s : seeds) cur[s] = 1;
      }

      auto record = [&](std::size_t step) {
        std::uint64_t white = 0;
        for (std::size_t v = 0; v < n; ++v) white += cur[v];
        acc.sum[step] += white;
        acc.sum_sq[step] += white * white;
        if (options.per_node) {
          std::uint64_t* row = acc.node_white.data() + step * n;
          for (std::size_t v = 0; v < n; ++v) row[v] += cur[v];
        }
        return white;
      };

      record(0);
      std::size_t step = 0;
      while (step < t) {
        if (absorbing && polar_state(*polar, cur) != Polar::None) break;
        mc_step(graph, sampler, cur, next, rng);
        cur.swap(next);
        record(++step);
      }
      // polarized states of a balanced graph are fixed points
      for (std::size_t s = step + 1; s <= t; ++s) record(s);

      if (polar) {
        switch (polar_state(*polar, cur)) {
          case Polar::SWhite: ++acc.s_white; break;
          case Polar::SBlack: ++acc.s_black; break;
          case Polar::None: break;
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  // Integer partial sums: the merge is exact and order-independent.
  SimStats stats;
  stats.trials = trials;
  stats.rng_seed = rng_seed;
  std::vector<std::uint64_t> sum(t + 1, 0), sum_sq(t + 1, 0), node_white(options.per_node ? (t + 1) * n : 0, 0);
  for (const Partial& p : partials) {
    for (std::size_t s = 0; s <= t; ++s) {
      sum[s] += p.sum[s];
      sum_sq[s] += p.sum_sq[s];
    }
    for (std::size_t k = 0; k < node_white.size(); ++k) node_white[k] += p.node_white[k];
    stats.polarized_s_white += p.s_white;
    stats.polarized_s_black += p.s_black;
  }
  const double nt = static_cast<double>(trials);
  stats.mean.resize(t + 1);
  stats.std_error.resize(t + 1);
  for (std::size_t s = 0; s <= t; ++s) {
    const double mean = static_cast<double>(sum[s]) / nt;
    stats.mean[s] = mean;
    if (trials > 1) {
      const double var = std::max(0.0, (static_cast<double>(sum_sq[s]) - nt * mean * mean) / (nt - 1.0));
      stats.std_error[s] = std::sqrt(var / nt);
    } else {
      stats.std_error[s] = 0.0;
    }
  }
  if (options.per_node) {
    stats.node_frequency.assign(t + 1, std::vector<double>(n));
    for (std::size_t s = 0; s <= t; ++s)
      for (std::size_t v = 0; v < n; ++v) stats.node_frequency[s][v] = static_cast<double>(node_white[s * n + v]) / nt;
  }
  return stats;
}

std::size_t coalescence_horizon(const SignedDigraph& graph, double tolerance, std::size_t max_steps) {
  const std::size_t n = graph.node_count();
  if (n > 400) throw Error(ErrorKind::TooLarge, "pair-walk horizon is limited to 400 nodes");
  if (n <= 1) return 0;
  // q[i*n+j] = Pr[walks started at i and j have not met yet]
  std::vector<double> q(n * n, 1.0), next(n * n);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 0.0;
  auto unmet_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += q[i * n + j];
    return s;
  };
  for (std::size_t t = 0; t <= max_steps; ++t) {
    if (unmet_mass() <= tolerance) return t;
    for (std::size_t i = 0; i < n; ++i) {
      next[i * n + i] = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double acc = 0.0;
        for (const OutEdge& a : graph.out_edges(static_cast<NodeId>(i))) {
          double inner = 0.0;
          for (const OutEdge& b : graph.out_edges(static_cast<NodeId>(j))) inner += b.weight * q[a.target * n + b.target];
          acc += a.weight * inner;
        }
        const double p = acc / (graph.total_out_weight(static_cast<NodeId>(i)) *
                                graph.total_out_weight(static_cast<NodeId>(j)));
        next[i * n + j] = p;
        next[j * n + i] = p;
      }
    }
    q.swap(next);
  }
  throw Error(ErrorKind::SlowMixing, "pair walks did not meet within " + std::to_string(max_steps) + " steps");
}

}  // namespace signvote
